"""
One handler per subcommand. Each returns the text printed on stdout.
"""
from pathlib import Path
from Sumprod.Utils.logger_management import get_logger
from Sumprod.Utils.configuration_management import get_config_manager, BinaryOp, EnergyKind
from Sumprod.Tool.set_core.exact_scalar import format_scalar
from Sumprod.Tool.set_core.set_io import write_set_file
from Sumprod.Tool.set_core.set_operations import binary_op, binary_op_size, combine
from Sumprod.Tool.set_core.energy import energy, energy_bounds_report
from Sumprod.Tool.construction.parameters import choose_parameters
from Sumprod.Tool.construction.construction import construct_set
from Sumprod.Tool.construction.moments import exponential_moment_check, markov_residue_bound, superadditivity_check, \
    periodicity_check
from Sumprod.Tool.slope_geometry.decomposition import slope_decomposition
from Sumprod.Tool.slope_geometry.dyadic import dyadic_select
from Sumprod.Tool.slope_geometry.clusters import cluster_mu
from Sumprod.Tool.slope_geometry.diagnostics import bigratio_diagnostic
from Sumprod.Tool.slope_geometry.serialization import decomposition_lines, write_decomposition, clusters_to_csv, \
    decomposition_report
from Sumprod.Tool.sweep_management.sweep import run_sweep
from Sumprod.Tool.sweep_management.fitting import fit_exponent
from Sumprod.Tool.sweep_management.reporting import emit_report

BINARY_OPS = {"sum": BinaryOp.SUM, "diff": BinaryOp.DIFFERENCE, "prod": BinaryOp.PRODUCT, "ratio": BinaryOp.RATIO}


def _sets(*keys):
    config_manager = get_config_manager()
    A = config_manager.get_value('set_A')
    return [config_manager.get_value(key, default=A) for key in keys]


def construct_command(args) -> str:
    params = choose_parameters(args.n)
    report = construct_set(args.n, params, theta_override=args.theta, measure=not args.no_measure)
    if args.set_out:
        write_set_file(args.set_out, report.A, comment=f"construction n={args.n} y={params.y} theta={report.params.theta}")
    return report.to_text()


def measure_command(args) -> str:
    A, B, C = _sets('set_A', 'set_B', 'set_C')
    if args.op in BINARY_OPS:
        op = BINARY_OPS[args.op]
        if args.elements:
            result = binary_op(op, A, B)
            return f"size={len(result)}\n" + "\n".join(format_scalar(value) for value in result)
        return f"size={binary_op_size(op, A, B)}"
    if args.op == "aa+a":
        B, C = A, A
    result = combine(A, B, C, materialize=args.elements)
    lines = [f"size={result.cardinality}"]
    if result.streamed:
        lines.append("streamed=true")
    if args.elements and result.elements is not None:
        lines.extend(format_scalar(value) for value in result.elements)
    return "\n".join(lines)


def energy_command(args) -> str:
    A, B = _sets('set_A', 'set_B')
    if args.report:
        return energy_bounds_report(A, B).to_text()
    return f"{args.kind}_energy={energy(EnergyKind(args.kind), A, B)}"


def slopes_command(args) -> str:
    logger = get_logger()
    A, = _sets('set_A')
    decomposition = slope_decomposition(A)
    if len(A) >= 2:
        logger.info(decomposition_report(decomposition, dyadic_select(decomposition, refine=False)))
    if args.out:
        write_decomposition(args.out, decomposition)
        return f"wrote {len(decomposition)} slopes to {args.out}"
    return "\n".join(decomposition_lines(decomposition))


def cluster_command(args) -> str:
    logger = get_logger()
    A, = _sets('set_A')
    decomposition = slope_decomposition(A)
    level = dyadic_select(decomposition, refine=not args.no_refine)
    logger.info(decomposition_report(decomposition, level))
    diagnostics = cluster_mu(A, decomposition, args.m, level=level)
    failed = [diagnostic for diagnostic in diagnostics if not diagnostic.holds]
    if failed:
        logger.warning(f"{len(failed)} clusters break mu >= union >= main - collisions")
    return clusters_to_csv(diagnostics).rstrip("\n")


def bigratio_command(args) -> str:
    A, X = _sets('set_A', 'set_X')
    return bigratio_diagnostic(A, X).to_text()


def sweep_command(args) -> str:
    config = get_config_manager().get_value('sweep_config')
    records = run_sweep(config, args.out, resume=not args.no_resume)
    return f"wrote {len(records)} records to {args.out}"


def fit_command(args) -> str:
    return fit_exponent(args.csv, args.x, args.y, args.min, args.max).to_text()


def report_command(args) -> str:
    records = get_config_manager().get_value('sweep_records')
    path = emit_report(records, args.format, Path(args.out), args.x, args.y)
    return f"wrote {args.format} report of {len(records)} records to {path}"


def moment_command(args) -> str:
    expected, average, equal = exponential_moment_check(args.y)
    lines = [f"y={args.y}", f"product_formula={expected}", f"block_average={average}", f"equal={equal}",
             f"periodic={periodicity_check(args.y)}"]
    if args.superadditivity_limit > 0:
        violations, checked = superadditivity_check(args.y, args.superadditivity_limit)
        lines.append(f"superadditivity_violations={violations}/{checked}")
    return "\n".join(lines)


def markov_command(args) -> str:
    threshold, classes_above, bound, holds = markov_residue_bound(args.y)
    return "\n".join([f"y={args.y}", f"T={threshold:.12g}", f"classes_above={classes_above}",
                      f"markov_bound={bound}", f"markov_bound_float={float(bound):.6f}", f"holds={holds}"])


COMMANDS = {
    'construct': construct_command,
    'measure': measure_command,
    'energy': energy_command,
    'slopes': slopes_command,
    'cluster': cluster_command,
    'bigratio': bigratio_command,
    'sweep': sweep_command,
    'fit': fit_command,
    'report': report_command,
    'moment': moment_command,
    'markov': markov_command,
}
