import os
from pathlib import Path
from Sumprod.Utils.logger_management import get_logger
from Sumprod.Utils.configuration_management import get_config_manager, get_knob_manager


def setup_output_directory():
    """
    Creates the output directory (if needed) and switches the logger from its memory buffer
    to debug.log / summary.log inside it.
    """
    logger = get_logger()
    logger.debug("============================ setup_output_directory")
    config_manager = get_config_manager()
    output_dir = Path(config_manager.get_value('output_dir_path')).resolve()
    try:
        os.makedirs(output_dir, exist_ok=True)
    except OSError as e:
        logger.error(f"Cannot create output directory '{output_dir}': {e}")
        raise
    get_logger(get_manager=True).setup_output_dir(str(output_dir))
    logger.debug(f"Output directory ready: {output_dir}")


def list_knobs() -> str:
    knob_manager = get_knob_manager()
    width = max(len(name) for name in knob_manager.knobs)
    lines = []
    for name, knob in sorted(knob_manager.knobs.items()):
        lines.append(f"{name.ljust(width)}  {str(knob.get_value()):>12}  {knob.description or ''}")
    return "\n".join(lines)
