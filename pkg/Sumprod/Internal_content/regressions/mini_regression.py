import filecmp
import os
import subprocess
import sys

WORKER_COUNTS = (1, 4, 16)
CONFIG = os.path.join("Sumprod", "Internal_content", "configs", "small_sweep.yaml")


def run_sweep(config: str, out_csv: str, workers: int, log_dir: str) -> bool:
    command = [sys.executable, "run_sumprod.py", "sweep", "--config", config, "--out", out_csv,
               "--workers", str(workers), "--no-resume", "--output", log_dir, "--seed", "1"]
    result = subprocess.run(command, text=True, capture_output=True)
    if result.returncode != 0:
        print(f"sweep with {workers} workers failed ({result.returncode}):\n{result.stderr}")
    return result.returncode == 0


def main():
    """
    Run the sample sweep with 1, 4 and 16 workers and check the CSVs are byte-identical.
    Run from the project root.
    """
    output_dir = "mini_regression"
    os.makedirs(output_dir, exist_ok=True)
    summary = []

    print(f"=== Starting mini regression runs")
    outputs = {}
    for workers in WORKER_COUNTS:
        run_str = f"sweep_workers_{workers}"
        subdir = os.path.join(output_dir, run_str)
        os.makedirs(subdir, exist_ok=True)
        out_csv = os.path.join(subdir, "sweep.csv")
        success = run_sweep(CONFIG, out_csv, workers, subdir)
        outputs[workers] = out_csv
        summary.append({"run": run_str, "success": success})

    reference = outputs[WORKER_COUNTS[0]]
    for workers in WORKER_COUNTS[1:]:
        identical = os.path.exists(outputs[workers]) and os.path.exists(reference) and \
            filecmp.cmp(reference, outputs[workers], shallow=False)
        summary.append({"run": f"identical_1_vs_{workers}", "success": identical})
    print(f"=== Finished mini regression")

    summary_file = os.path.join(output_dir, "summary.txt")
    with open(summary_file, "w") as f:
        all_success = all(entry["success"] for entry in summary)
        f.write("Summary of mini regression tests:\n")
        for entry in summary:
            status = "PASSED" if entry["success"] else "FAILED"
            f.write(f"{entry['run']}: {status}\n")
        f.write("\nAll tests PASSED\n" if all_success else "\nSome tests FAILED\n")
    return 0 if all_success else 1


if __name__ == "__main__":
    sys.exit(main())
