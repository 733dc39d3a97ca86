from Sumprod.Utils.logger_management import get_logger
from Sumprod.Tool.stages.command_stage.commands import COMMANDS


def command_section(args) -> str:
    """Run the selected subcommand and return its stdout text."""
    logger = get_logger()
    logger.info(f"======== command_section: {args.command}")
    return COMMANDS[args.command](args)
