import argparse
import sys
from Sumprod.Utils.logger_management import get_logger
from Sumprod.Utils.configuration_management import get_config_manager, get_knob_manager
from Sumprod.Utils.error_management import ConfigError
from Sumprod.Utils.seed_management import set_seed
from Sumprod.Utils.arg_parser.utils import setup_output_directory, list_knobs

MEASURE_OPS = ["sum", "prod", "ratio", "diff", "aa+a", "ab+c"]
REPORT_FORMATS = ["csv", "svg", "text"]


class SumprodArgumentParser(argparse.ArgumentParser):
    """Usage errors become ConfigError, so they exit with the input-error status like every other bad input."""

    def error(self, message):
        self.print_usage(sys.stderr)
        raise ConfigError(f"{self.prog}: {message}")


def _common_options() -> argparse.ArgumentParser:
    """Options every subcommand accepts."""
    common = SumprodArgumentParser(add_help=False)
    common.add_argument('--output', type=str, help='Directory for debug.log and summary.log.')
    common.add_argument('--seed', type=int, help='seed for reproducibility.')
    common.add_argument('--workers', type=int, help='Worker pool size (overrides the workers knob).')
    common.add_argument('-D', '--define', action='append',
                        help="Define knobs in the format key=value. Can be used multiple times.")
    return common


def build_parser() -> argparse.ArgumentParser:
    common = _common_options()
    parser = SumprodArgumentParser(prog="sumprod", description="Exact sum-product workbench.")
    parser.add_argument('--list-knobs', action='store_true', help='Print every knob with its default and exit.')
    commands = parser.add_subparsers(dest='command', metavar='command')

    construct = commands.add_parser('construct', parents=[common], help='Build the small |AA+mA| set for n.')
    construct.add_argument('--n', type=int, required=True, help='Range parameter n (n >= 5).')
    construct.add_argument('--theta', type=float, help='Override the selection threshold.')
    construct.add_argument('--no-measure', action='store_true', help='Only build the set, skip |AA| and |AA+mA|.')
    construct.add_argument('--set-out', type=str, help='Also write the constructed set to this set file.')

    measure = commands.add_parser('measure', parents=[common], help='Size of a sumset, product set, ratio set...')
    measure.add_argument('--set', type=str, required=True, help='Set file A.')
    measure.add_argument('--op', choices=MEASURE_OPS, required=True)
    measure.add_argument('--b', type=str, help='Set file B (defaults to A).')
    measure.add_argument('--c', type=str, help='Set file C for ab+c (defaults to A).')
    measure.add_argument('--elements', action='store_true', help='Print the elements, not only the size.')

    energy = commands.add_parser('energy', parents=[common], help='Additive or multiplicative energy.')
    energy.add_argument('--set', type=str, required=True)
    energy.add_argument('--b', type=str, help='Second set file (defaults to A).')
    energy.add_argument('--kind', choices=['additive', 'multiplicative'], default='additive')
    energy.add_argument('--report', action='store_true', help='Both energies with their classical bounds.')

    slopes = commands.add_parser('slopes', parents=[common], help='Slope decomposition of A x A.')
    slopes.add_argument('--set', type=str, required=True)
    slopes.add_argument('--out', type=str, help='Write the "p/q mass" lines to this file instead of stdout.')

    cluster = commands.add_parser('cluster', parents=[common], help='Cluster diagnostics for width M.')
    cluster.add_argument('--set', type=str, required=True)
    cluster.add_argument('--m', type=int, required=True, help='Half cluster width M.')
    cluster.add_argument('--no-refine', action='store_true', help='Cluster S_tau instead of the refined S.')

    bigratio = commands.add_parser('bigratio', parents=[common], help='Growth of AX+AX against |X| |A/A|^(1/2).')
    bigratio.add_argument('--set', type=str, required=True)
    bigratio.add_argument('--x', type=str, help='Set file X (defaults to A).')

    sweep = commands.add_parser('sweep', parents=[common], help='Measure set families over a size grid.')
    sweep.add_argument('--config', type=str, required=True, help='YAML sweep config.')
    sweep.add_argument('--out', type=str, required=True, help='Output CSV.')
    sweep.add_argument('--no-resume', action='store_true', help='Ignore an existing run log and start over.')

    fit = commands.add_parser('fit', parents=[common], help='Log-log exponent fit over a sweep CSV.')
    fit.add_argument('--csv', type=str, required=True)
    fit.add_argument('--x', type=str, required=True)
    fit.add_argument('--y', type=str, required=True)
    fit.add_argument('--min', type=float, help='Smallest x to include.')
    fit.add_argument('--max', type=float, help='Largest x to include.')

    report = commands.add_parser('report', parents=[common], help='Render a sweep CSV.')
    report.add_argument('--csv', type=str, required=True)
    report.add_argument('--format', choices=REPORT_FORMATS, required=True)
    report.add_argument('--out', type=str, required=True)
    report.add_argument('--x', type=str, default='n', help='x column of the svg scatter.')
    report.add_argument('--y', type=str, default='aa_plus_a', help='y column of the svg scatter.')

    moment = commands.add_parser('moment', parents=[common], help='Exponential moment of 2^g over one period.')
    moment.add_argument('--y', type=int, required=True)
    moment.add_argument('--superadditivity-limit', type=int, default=0,
                        help='Also check g(ab) >= f(a) + f(b) for a, b up to this limit.')

    markov = commands.add_parser('markov', parents=[common], help='Markov bound on residues with large g.')
    markov.add_argument('--y', type=int, required=True)
    return parser


def parse_arguments(input_args=None):
    """
    Parses command-line arguments and updates configuration values.

    Args:
        input_args (list, optional): A list of arguments to parse. Defaults to None, which uses sys.argv.

    Returns:
        argparse.Namespace: Parsed arguments.
    """
    logger = get_logger()
    logger.debug("======================== parse_arguments")

    config_manager = get_config_manager()
    knob_manager = get_knob_manager()

    parser = build_parser()
    args = parser.parse_args(input_args) if input_args is not None else parser.parse_args()

    command_line_string = ' '.join(sys.argv if input_args is None else ['sumprod'] + list(input_args))
    config_manager.set_value('command_line_string', command_line_string)

    if args.list_knobs:
        config_manager.set_value('command', 'list-knobs')
        print(list_knobs())
        return args
    if not args.command:
        parser.print_usage(sys.stderr)
        raise ConfigError("a command is required")
    config_manager.set_value('command', args.command)
    logger.info(f"--------------- command: {args.command}")

    if args.output:
        logger.info(f"--------------- Output directory: {args.output}")
        config_manager.set_value('output_dir_path', args.output)
        setup_output_directory()

    seed = set_seed(args.seed)
    logger.info(f"--------------- seed: {seed}{'' if args.seed is not None else ' (random)'}")

    defined = []
    if args.define:
        for item in args.define:
            if '=' not in item:
                raise ConfigError(f"Invalid format for --define: {item}. Expected format is key=value.")
            key, value = item.split('=', 1)
            logger.info(f"--------------- defines: {key}={value}")
            knob_manager.override_knob(key.strip(), value.strip())
            defined.append(key.strip())
    if args.workers is not None:
        if args.workers < 1:
            raise ConfigError(f"--workers must be at least 1, got {args.workers}")
        logger.info(f"--------------- workers: {args.workers}")
        knob_manager.override_knob('workers', args.workers)
        defined.append('workers')
    config_manager.set_value('defined_knobs', tuple(defined))

    return args
