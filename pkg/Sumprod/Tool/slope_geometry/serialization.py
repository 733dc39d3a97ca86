"""
Text and CSV renderings of slope decompositions and cluster diagnostics.
"""
import csv
import io
from pathlib import Path
from typing import Iterable, List, Union
from Sumprod.Tool.set_core.exact_scalar import format_scalar
from Sumprod.Tool.slope_geometry.decomposition import SlopeDecomposition
from Sumprod.Tool.slope_geometry.dyadic import DyadicLevel
from Sumprod.Tool.slope_geometry.clusters import ClusterDiagnostic

CLUSTER_CSV_FIELDS = ["M", "cluster_index", "slopes_v", "slopes_w", "mu_actual", "union_size", "main_term",
                      "collision_sum", "holds"]


def decomposition_lines(decomposition: SlopeDecomposition) -> Iterable[str]:
    """One "p/q mass" line per slope, in increasing slope order; integral slopes keep q = 1."""
    for index in range(len(decomposition)):
        yield f"{decomposition.numerators[index]}/{decomposition.denominators[index]} {decomposition.mass(index)}"


def write_decomposition(path: Union[str, Path], decomposition: SlopeDecomposition):
    with open(path, "w", encoding="utf-8", newline="\n") as handle:
        for line in decomposition_lines(decomposition):
            handle.write(line + "\n")


def cluster_csv_row(diagnostic: ClusterDiagnostic) -> List[str]:
    return [str(diagnostic.M), str(diagnostic.cluster_index),
            ";".join(format_scalar(slope) for slope in diagnostic.slopes_v),
            ";".join(format_scalar(slope) for slope in diagnostic.slopes_w),
            str(diagnostic.mu_actual), str(diagnostic.union_size), str(diagnostic.main_term),
            str(diagnostic.collision_sum), str(diagnostic.holds).lower()]


def clusters_to_csv(diagnostics: Iterable[ClusterDiagnostic]) -> str:
    buffer = io.StringIO()
    writer = csv.writer(buffer, lineterminator="\n")
    writer.writerow(CLUSTER_CSV_FIELDS)
    for diagnostic in diagnostics:
        writer.writerow(cluster_csv_row(diagnostic))
    return buffer.getvalue()


def decomposition_report(decomposition: SlopeDecomposition, level: DyadicLevel = None) -> str:
    """Human-readable summary: sizes, mass identity, the selected dyadic level."""
    size = len(decomposition.base_set)
    lines = [f"|A| = {size}",
             f"|A/A| = {len(decomposition)}",
             f"sum of masses = {int(decomposition.masses.sum())} (|A|^2 = {size * size}, "
             f"identity {'holds' if decomposition.mass_identity_holds else 'FAILS'})"]
    if level is not None:
        lines.append(f"tau = {level.tau}, |S_tau| = {len(level.tau_indices)}, mass = {level.mass}, "
                     f"guarantee {'holds' if level.guarantee_holds else 'FAILS'}")
        if level.is_refined:
            lines.append(f"t0 = {level.t0}, |S| = {len(level.refined_indices)}")
    return "\n".join(lines)
