from Sumprod.Utils.logger_management import get_logger
from Sumprod.Utils.error_management import ConfigError
from Sumprod.Utils.configuration_management import get_knob_manager


def validate_arguments(args):
    """Range checks argparse cannot express."""
    if args.command == 'construct' and args.n < 1:
        raise ConfigError(f"--n must be positive, got {args.n}")
    if args.command == 'cluster' and args.m < 1:
        raise ConfigError(f"--m must be positive, got {args.m}")
    if args.command in ('moment', 'markov') and args.y < 3:
        raise ConfigError(f"--y must be at least 3, got {args.y}")
    if args.command == 'fit' and args.min is not None and args.max is not None and args.min > args.max:
        raise ConfigError(f"--min {args.min} is above --max {args.max}")


def evaluate_section(args):
    logger = get_logger()
    logger.info("======== evaluate_section")
    validate_arguments(args)
    # knobs are final from here on: command line and sweep budgets have been applied
    get_knob_manager().seal_all()
