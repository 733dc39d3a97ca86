from Sumprod.Utils.configuration_management import get_config_manager
from Sumprod.Utils.logger_management import get_logger
from Sumprod.Tool.set_core.set_io import read_set_file
from Sumprod.Tool.sweep_management.sweep import load_sweep_config, apply_budgets
from Sumprod.Tool.sweep_management.records import read_records

# set-file options per command, stored in the config manager as set_<letter>
SET_OPTIONS = {
    'measure': ('set', 'b', 'c'),
    'energy': ('set', 'b'),
    'slopes': ('set',),
    'cluster': ('set',),
    'bigratio': ('set', 'x'),
}
CONFIG_KEYS = {'set': 'set_A', 'b': 'set_B', 'c': 'set_C', 'x': 'set_X'}


def read_sets(args):
    logger = get_logger()
    logger.info("============ read_sets")
    config_manager = get_config_manager()
    for option in SET_OPTIONS.get(args.command, ()):
        path = getattr(args, option, None)
        if path is None:
            continue
        A = read_set_file(path)
        logger.info(f"--------------- {CONFIG_KEYS[option]}: {path} (|A| = {len(A)}, {A.sign_summary.value})")
        config_manager.set_value(CONFIG_KEYS[option], A)


def read_sweep_config(args):
    logger = get_logger()
    logger.info("============ read_sweep_config")
    config = load_sweep_config(args.config)
    apply_budgets(config)
    get_config_manager().set_value('sweep_config', config)


def read_sweep_records(args):
    logger = get_logger()
    logger.info("============ read_sweep_records")
    records = read_records(args.csv)
    logger.info(f"--------------- {len(records)} records from {args.csv}")
    get_config_manager().set_value('sweep_records', records)


def read_inputs(args):
    logger = get_logger()
    logger.info("======== read_inputs")
    read_sets(args)
    if args.command == 'sweep':
        read_sweep_config(args)
    elif args.command == 'report':
        read_sweep_records(args)
