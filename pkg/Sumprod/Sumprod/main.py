import sys
import time
import traceback
from pathlib import Path


def main(args=None) -> int:
    """
    Run one subcommand and return the process exit status:
    0 on success, 1 on an input error, 2 when a resource budget stopped the computation.
    """
    start_time = time.time()

    ensure_correct_setting()

    from Sumprod.Utils.logger_management import get_logger
    from Sumprod.Utils.error_management import exit_code_for
    from Sumprod.Utils.statistics_managment import get_statistics_manager

    logger = get_logger()
    logger.debug("==== Sumprod main")

    try:
        from Sumprod.Utils.arg_parser.arg_parser import parse_arguments
        set_basedir_path()
        parsed = parse_arguments(args)
        if parsed.list_knobs:
            return 0

        from Sumprod.Tool.stages import input_stage, evaluation_stage, command_stage, final_stage

        input_stage.read_inputs(parsed)  # set files, sweep config (with its budgets), sweep CSV
        evaluation_stage.evaluate_section(parsed)  # argument checks, seal the knobs
        output = command_stage.command_section(parsed)
        final_stage.final_section()

    except Exception as e:
        code = exit_code_for(e)
        logger.debug("Run failed:\n%s", traceback.format_exc())
        logger.error(f"{type(e).__name__}: {e}")
        dump_time(start_time, "Run total")
        print(f"error: {e}", file=sys.stderr)
        return code

    else:
        if output:
            print(output)
        statistics_manager = get_statistics_manager()
        measured = statistics_manager.get('measured_cells')
        if measured:
            logger.info(f"Measured {measured} cells, {statistics_manager.get('resource_limited_cells')} resource-limited")
        dump_time(start_time, "Run total")
        return 0

    finally:
        from Sumprod.Tool.stages import final_stage
        final_stage.reset_tool()


def dump_time(start_time, message_header=None) -> float:
    from Sumprod.Utils.logger_management import get_logger
    logger = get_logger()

    duration = time.time() - start_time
    if message_header is not None:
        logger.info(f'{message_header} took {duration:.2f} seconds')
    return duration


def set_basedir_path():
    """
    Stores `base_dir_path` (the directory of this file) and `internal_content_dir_path`
    in the configuration manager.
    """
    from Sumprod.Utils.logger_management import get_logger
    from Sumprod.Utils.configuration_management import get_config_manager

    logger = get_logger()
    config_manager = get_config_manager()

    base_dir = Path(__file__).resolve().parent
    logger.debug(f"Base directory determined: {base_dir}")
    config_manager.set_value('base_dir_path', str(base_dir))
    config_manager.set_value('internal_content_dir_path', str((base_dir / ".." / "Internal_content").resolve()))


def ensure_correct_setting():
    """Ensure the correct Python version is used."""
    if sys.version_info < (3, 10):
        raise RuntimeError(
            f"Sumprod requires Python 3.10 or higher. You are using Python {sys.version_info.major}.{sys.version_info.minor}."
        )


if __name__ == "__main__":
    sys.exit(main())
