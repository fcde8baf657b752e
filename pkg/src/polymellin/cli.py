from __future__ import annotations

import logging
import math
from collections.abc import Callable, Sequence
from dataclasses import dataclass, replace
from datetime import UTC, datetime
from enum import StrEnum
from pathlib import Path
from typing import Annotated, Any, TypeVar

import click
import numpy as np
import typer
from rich.console import Console
from rich.logging import RichHandler

from polymellin import __version__
from polymellin.algebra.laurent import LaurentPolynomial, LogPoint, evaluate_log, term_modulus_log
from polymellin.coamoeba import closure_union_faces, completely_nonvanishing_check, theta_clearance, write_cloud_csv
from polymellin.config import QuadratureSpec, ToolConfig, load_config, save_config
from polymellin.constants import TOOL_NAME
from polymellin.errors import NearZeroDenominator, PolyMellinError, UsageError
from polymellin.geometry.polytope import enumerate_faces, facet_representation
from polymellin.gkz import gkz_check
from polymellin.mellin.continuation import auto_m, continue_to_m, continued_mellin_eval, phi_eval
from polymellin.mellin.transform import (
    TubePoint,
    convergence_domain,
    inverse_mellin_eval,
    laurent_coefficient,
    laurent_partial_sum,
    mellin_eval,
)
from polymellin.models import ErrorInfo, Provenance, ReportDocument, load_polynomial, sha256_file
from polymellin.special.gamma import gamma
from polymellin.special.oracles import (
    LinearForm,
    closed_form_mellin,
    example3_phi,
    linear_fraction_mellin,
    partial_fraction_check,
    product_linear_phi,
    psi_from_polynomial,
    psi_mellin,
    psi_zero_check,
)
from polymellin.utils.output import OutputFormat, emit
from polymellin.utils.parsing import (
    parse_angle_vector,
    parse_box,
    parse_complex_vector,
    parse_float_vector,
    parse_int_vector,
    parse_vector_list,
)
from polymellin.utils.serialization import to_plain_data

logger = logging.getLogger(__name__)

app = typer.Typer(
    no_args_is_help=True,
    add_completion=False,
    help="Mellin transforms of rational functions: Newton polytopes, continuation, coamoebas and GKZ checks",
)
config_app = typer.Typer(no_args_is_help=True, help="Configuration commands")
app.add_typer(config_app, name="config")

T = TypeVar("T")


class OracleCase(StrEnum):
    EXAMPLE1 = "example1"
    PROP41 = "prop41"
    PROP42 = "prop42"
    BINOMIAL = "binomial"
    PSI = "psi"
    EXAMPLE3 = "example3"


@dataclass(frozen=True, slots=True)
class CommandSpec:
    """One validated invocation of a computational subcommand."""

    subcommand: str
    input: Path | None = None
    s: tuple[complex, ...] | None = None
    theta: tuple[float, ...] | None = None
    m: tuple[int, ...] | None = None
    sigma: tuple[float, ...] | None = None
    z: tuple[float, ...] | None = None
    alpha: tuple[int, ...] | None = None
    box: tuple[tuple[int, int], ...] | None = None
    a: tuple[tuple[float, ...], ...] | None = None
    case: OracleCase | None = None
    grid: int | None = None
    tol: float | None = None
    radius: float | None = None
    nodes: int | None = None
    epsilon: float | None = None
    phi: bool = False
    csv: Path | None = None
    out: Path | None = None
    config_file: Path | None = None
    threads: int | None = None
    timestamp: bool = False


class CLIState:
    def __init__(
        self,
        *,
        output: OutputFormat = OutputFormat.JSON,
        config_file: Path | None = None,
        threads: int | None = None,
        timestamp: bool = False,
        capture: bool = False,
    ) -> None:
        self.output = output
        self.config_file = config_file
        self.threads = threads
        self.timestamp = timestamp
        self.capture = capture
        self.captured: CommandSpec | None = None


def _state(ctx: typer.Context) -> CLIState:
    obj = ctx.obj
    if not isinstance(obj, CLIState):
        raise typer.BadParameter("CLI context was not initialized")
    return obj


def _version_callback(value: bool) -> None:
    if value:
        typer.echo(f"{TOOL_NAME} {__version__}")
        raise typer.Exit()


def _configure_logging(verbosity: int) -> None:
    level = logging.WARNING if verbosity <= 0 else logging.INFO if verbosity == 1 else logging.DEBUG
    package_logger = logging.getLogger(TOOL_NAME)
    package_logger.handlers.clear()
    package_logger.addHandler(RichHandler(console=Console(stderr=True), show_path=False))
    package_logger.setLevel(level)


@app.callback()
def main(
    ctx: typer.Context,
    output: Annotated[OutputFormat, typer.Option("--output", "-o", help="Output format")] = OutputFormat.JSON,
    config_file: Annotated[
        Path | None,
        typer.Option("--config-file", "-c", help="Path to a yaml/json/toml config file"),
    ] = None,
    threads: Annotated[int | None, typer.Option("--threads", min=1, help="Quadrature worker threads")] = None,
    verbose: Annotated[int, typer.Option("--verbose", "-v", count=True, help="Log INFO (-v) or DEBUG (-vv)")] = 0,
    timestamp: Annotated[bool, typer.Option("--timestamp", help="Add generatedAt to the report")] = False,
    version: Annotated[
        bool | None,
        typer.Option("--version", callback=_version_callback, is_eager=True, help="Show version"),
    ] = None,
) -> None:
    _ = version
    state = ctx.obj if isinstance(ctx.obj, CLIState) else CLIState()
    state.output = output
    state.config_file = config_file
    state.threads = threads
    state.timestamp = timestamp
    ctx.obj = state
    if not state.capture:
        _configure_logging(verbose)


def _parse(text: str | None, parser: Callable[[str], T], flag: str) -> T | None:
    if text is None:
        return None
    try:
        return parser(text)
    except ValueError as exc:
        raise typer.BadParameter(str(exc), param_hint=f"'{flag}'") from exc


_REQUIRED: dict[str, tuple[str, ...]] = {
    "polytope": ("input",),
    "eval": ("input", "s"),
    "continue": ("input",),
    "coamoeba": ("input",),
    "gkz": ("input", "s"),
    "oracle": ("case", "s"),
    "invert": ("input", "z"),
    "laurent": ("input", "z"),
}

_FLAGS = {"input": "-f/--file", "s": "--s", "z": "--z", "case": "--case", "a": "--a", "m": "--m"}

_ORACLE_NEEDS: dict[OracleCase, tuple[str, ...]] = {
    OracleCase.EXAMPLE1: (),
    OracleCase.PROP41: ("a",),
    OracleCase.PROP42: ("input",),
    OracleCase.BINOMIAL: ("input",),
    OracleCase.PSI: ("input",),
    OracleCase.EXAMPLE3: ("a",),
}


def validate_spec(spec: CommandSpec) -> CommandSpec:
    """Per-subcommand flag checks; raises UsageError naming the offending flag."""

    if spec.subcommand not in _REQUIRED:
        raise UsageError(f"unknown subcommand {spec.subcommand!r}")
    needed = list(_REQUIRED[spec.subcommand])
    if spec.subcommand == "oracle" and spec.case is not None:
        needed += _ORACLE_NEEDS[spec.case]
    for name in needed:
        if getattr(spec, name) is None:
            raise UsageError(f"{spec.subcommand}: missing option {_FLAGS.get(name, '--' + name)}")
    if spec.subcommand == "continue" and spec.m is None and spec.s is None:
        raise UsageError("continue: give --m, --s or both")
    if spec.subcommand == "laurent" and (spec.alpha is None) == (spec.box is None):
        raise UsageError("laurent: give exactly one of --alpha and --box")
    if spec.case is OracleCase.EXAMPLE3 and spec.a is not None and (len(spec.a) != 1 or len(spec.a[0]) != 4):
        raise UsageError("oracle example3: --a takes four coefficients a1,a2,a3,a4")
    if spec.phi and spec.s is None:
        raise UsageError("continue: --phi needs --s")
    return spec


def _dispatch(ctx: typer.Context, spec: CommandSpec) -> None:
    state = _state(ctx)
    spec = replace(spec, config_file=state.config_file, threads=state.threads, timestamp=state.timestamp)
    try:
        validate_spec(spec)
    except UsageError as exc:
        raise click.UsageError(str(exc), ctx=ctx) from exc
    if state.capture:
        state.captured = spec
        return
    try:
        report = run(spec)
    except UsageError as exc:
        raise click.UsageError(str(exc), ctx=ctx) from exc
    if spec.out is not None:
        report.write(spec.out)
    emit(report, output=state.output)
    if report.status == "error":
        raise typer.Exit(code=1)


def parse_command(argv: Sequence[str]) -> CommandSpec:
    """Turn an argument vector into a validated CommandSpec without running it."""

    state = CLIState(capture=True)
    command = typer.main.get_command(app)
    try:
        command.main(args=list(argv), prog_name=TOOL_NAME, standalone_mode=False, obj=state)
    except click.UsageError as exc:
        raise UsageError(exc.format_message()) from exc
    if state.captured is None:
        raise UsageError(f"no computational subcommand in {list(argv)}")
    return state.captured


# Handlers return (result, quadrature actually used).
Outcome = tuple[dict[str, Any], dict[str, Any] | None]


def _quadrature(spec: CommandSpec, config: ToolConfig) -> QuadratureSpec:
    updates: dict[str, Any] = {}
    if spec.tol is not None:
        updates["tol"] = spec.tol
    if spec.radius is not None:
        updates["radius"] = (spec.radius,)
    if spec.nodes is not None:
        updates["nodes"] = (spec.nodes,)
    if spec.threads is not None:
        updates["workers"] = spec.threads
    return config.quadrature.model_copy(update=updates)


def _point(spec: CommandSpec) -> TubePoint:
    assert spec.s is not None
    return TubePoint.from_complex(spec.s)


def _relative(value: complex, reference: complex) -> float:
    return abs(value - reference) / max(abs(reference), 1e-300)


def _one(f: LaurentPolynomial) -> LaurentPolynomial:
    return LaurentPolynomial.constant(1, f.nvars)


def _reciprocal(f: LaurentPolynomial, at: LogPoint, config: ToolConfig) -> complex:
    value = evaluate_log(f, at)
    threshold = math.log(config.laurent.near_zero_ratio) + float(term_modulus_log(f, at.x))
    if value == 0 or math.log(abs(value)) < threshold:
        raise NearZeroDenominator(f"f nearly vanishes at x={at.x}, θ={at.theta} (|f|={abs(value):.3e})", module="cli")
    return 1 / value


def _run_polytope(spec: CommandSpec, f: LaurentPolynomial | None, config: ToolConfig) -> Outcome:
    assert f is not None
    hull = facet_representation(f.support)
    faces = enumerate_faces(hull, f.support)
    return {
        "nvars": f.nvars,
        "vertices": hull.vertices,
        "facets": [{"index": i, "mu": facet.mu, "nu": facet.nu} for i, facet in enumerate(hull.facets)],
        "faces": [
            {"index": i, "dim": face.dim, "facets": face.facet_indices, "support": face.support}
            for i, face in enumerate(faces)
        ],
    }, None


def _run_eval(spec: CommandSpec, f: LaurentPolynomial | None, config: ToolConfig) -> Outcome:
    assert f is not None
    one = _one(f)
    value = mellin_eval(one, f, 1, _point(spec), spec.theta, _quadrature(spec, config), decay=config.decay)
    domain = convergence_domain(one, f)
    return {
        "s": spec.s,
        "theta": spec.theta,
        "value": value.value,
        "errEstimate": value.err_estimate,
        "refinements": value.refinements,
        "domain": {"normals": domain.polytope.normals, "offsets": domain.polytope.gamma},
    }, value.spec.model_dump(mode="json")


def _run_continue(spec: CommandSpec, f: LaurentPolynomial | None, config: ToolConfig) -> Outcome:
    assert f is not None
    settings = config.continuation
    m = spec.m
    if m is None:
        m = auto_m(facet_representation(f.support), _point(spec).sigma, settings.auto_margin)
    state = continue_to_m(f, m)
    result: dict[str, Any] = {
        "m": state.m,
        "power": state.power,
        "numerator": state.numerator,
        "uFactors": [
            {"facet": u.facet, "mu": u.mu, "nu": u.nu, "shift": u.shift} for u in state.u_factors
        ],
        "domainOffsets": state.domain.gamma,
    }
    quadrature = None
    if spec.s is not None:
        quad = _quadrature(spec, config)
        value = continued_mellin_eval(state, f, _point(spec), spec.theta, quad, settings=settings, decay=config.decay)
        result.update(value=value.value, errEstimate=value.err_estimate, refinements=value.refinements)
        quadrature = value.spec.model_dump(mode="json")
        if spec.phi:
            phi = phi_eval(f, _point(spec), spec.theta, quad, settings=settings, decay=config.decay)
            result["phi"] = {
                "value": phi.value,
                "m": phi.m,
                "perturbation": phi.perturbation,
                "errEstimate": phi.mellin.err_estimate,
            }
    return result, quadrature


def _run_coamoeba(spec: CommandSpec, f: LaurentPolynomial | None, config: ToolConfig) -> Outcome:
    assert f is not None
    updates = {key: value for key, value in (("grid", spec.grid), ("radius", spec.radius)) if value is not None}
    cloud = closure_union_faces(f, settings=config.coamoeba.model_copy(update=updates))
    result: dict[str, Any] = {
        "nvars": cloud.nvars,
        "points": len(cloud),
        "faceIds": sorted({int(face) for face in cloud.face_ids}),
    }
    if spec.csv is not None:
        result["csv"] = str(write_cloud_csv(cloud, spec.csv))
    if spec.theta is not None:
        settings = config.nonvanishing
        if spec.epsilon is not None:
            settings = settings.model_copy(update={"epsilon": spec.epsilon})
        report = completely_nonvanishing_check(f, spec.theta, settings)
        result["clearance"] = theta_clearance(spec.theta, cloud)
        result["nonvanishing"] = {"verdict": report.verdict, "epsilon": report.epsilon, "faces": report.faces}
    return result, None


def _run_gkz(spec: CommandSpec, f: LaurentPolynomial | None, config: ToolConfig) -> Outcome:
    assert f is not None
    quad = _quadrature(spec, config)
    report = gkz_check(f, _point(spec), spec.theta, quad, settings=config.gkz, decay=config.decay)
    return {
        "kernel": [vector.b for vector in report.kernel],
        "eulerResiduals": report.euler.residuals,
        "boxResiduals": [
            {"b": box.b, "residual": box.residual, "errEstimate": box.err_estimate} for box in report.boxes
        ],
        "value": report.euler.value.value,
        "errEstimate": report.euler.err_estimate,
    }, report.euler.value.spec.model_dump(mode="json")


def _compare(case: OracleCase, closed: complex, numeric: Any, **extra: Any) -> Outcome:
    result = {
        "case": case,
        "closedForm": closed,
        "quadrature": numeric.value,
        "errEstimate": numeric.err_estimate,
        "relativeDifference": _relative(numeric.value, closed),
        **extra,
    }
    return result, numeric.spec.model_dump(mode="json")


def _run_oracle(spec: CommandSpec, f: LaurentPolynomial | None, config: ToolConfig) -> Outcome:
    assert spec.case is not None and spec.s is not None
    point = _point(spec)
    quad = _quadrature(spec, config)
    case = spec.case

    if case is OracleCase.EXAMPLE1:
        form = LinearForm((1, 1, 1))
        poly = form.polynomial()
        closed = linear_fraction_mellin(form, point)
        return _compare(case, closed, mellin_eval(_one(poly), poly, 1, point, spec.theta, quad, decay=config.decay))

    if case is OracleCase.PROP41:
        assert spec.a is not None
        rows = [list(row) for row in spec.a]
        poly = LinearForm((1, *rows[0])).polynomial()
        for row in rows[1:]:
            poly = poly * LinearForm((1, *row)).polynomial()
        s = point.s
        factor = complex(np.prod(gamma(s)) * gamma(len(rows) - s.sum()))
        closed = product_linear_phi(rows, point, quad) * factor
        extra: dict[str, Any] = {}
        if spec.z is not None:
            lhs, rhs = partial_fraction_check(rows, [math.exp(x) for x in spec.z], quad)
            extra["partialFractions"] = {"lhs": lhs, "rhs": rhs, "relativeDifference": _relative(rhs, lhs)}
        numeric = mellin_eval(_one(poly), poly, 1, point, spec.theta, quad, decay=config.decay)
        return _compare(case, closed, numeric, **extra)

    if case in (OracleCase.PROP42, OracleCase.BINOMIAL):
        assert f is not None
        closed = complex(np.asarray(closed_form_mellin(f)(point.s)))
        return _compare(case, closed, mellin_eval(_one(f), f, 1, point, spec.theta, quad, decay=config.decay))

    if case is OracleCase.PSI:
        assert f is not None
        roots, lead = psi_from_polynomial(f)
        closed = complex(psi_mellin(roots, lead, point.s[0]))
        numeric = mellin_eval(_one(f), f, 1, point, spec.theta, quad, decay=config.decay)
        return _compare(case, closed, numeric, psiAtIntegers=psi_zero_check(roots, lead))

    assert spec.a is not None
    a = spec.a[0]
    unit_square = ((0, 0), (1, 0), (0, 1), (1, 1))
    poly = LaurentPolynomial(2, tuple((exp, complex(value)) for exp, value in zip(unit_square, a, strict=True)))
    closed = example3_phi(a, point)
    if all(value != 0 for value in a):
        phi = phi_eval(poly, point, spec.theta, quad, settings=config.continuation, decay=config.decay)
        result = {
            "case": case,
            "closedForm": closed,
            "quadrature": phi.value,
            "errEstimate": phi.mellin.err_estimate * abs(phi.gamma_reciprocal),
            "relativeDifference": _relative(phi.value, closed),
            "m": phi.m,
        }
        return result, phi.mellin.spec.model_dump(mode="json")
    s1, s2 = point.values()
    normalizer = complex(np.prod(gamma(np.array([s1, s2, 1 - s1, 1 - s2]))))
    numeric = mellin_eval(_one(poly), poly, 1, point, spec.theta, quad, decay=config.decay)
    return _compare(case, closed * normalizer, numeric)


def _run_invert(spec: CommandSpec, f: LaurentPolynomial | None, config: ToolConfig) -> Outcome:
    assert f is not None and spec.z is not None
    sigma = spec.sigma
    if sigma is None:
        interior = convergence_domain(_one(f), f).interior_point
        if interior is None:
            raise UsageError("invert: the convergence domain is empty; give --sigma")
        sigma = tuple(float(value) for value in interior)
    at = LogPoint.at(spec.z, spec.theta)
    direct = _reciprocal(f, at, config)
    quad = _quadrature(spec, config)
    value = inverse_mellin_eval(closed_form_mellin(f), sigma, at, quad)
    return {
        "sigma": sigma,
        "x": at.x,
        "theta": at.theta,
        "value": value,
        "direct": direct,
        "relativeDifference": _relative(value, direct),
    }, quad.model_dump(mode="json")


def _run_laurent(spec: CommandSpec, f: LaurentPolynomial | None, config: ToolConfig) -> Outcome:
    assert f is not None and spec.z is not None
    quad = _quadrature(spec, config)
    if spec.alpha is not None:
        value = laurent_coefficient(f, spec.alpha, spec.z, quad, settings=config.laurent)
        return {"x": spec.z, "alpha": spec.alpha, "coefficient": value}, None
    assert spec.box is not None
    at = LogPoint.at(spec.z, spec.theta)
    direct = _reciprocal(f, at, config)
    total = laurent_partial_sum(f, at, spec.box, quad, settings=config.laurent)
    return {
        "x": at.x,
        "theta": at.theta,
        "box": spec.box,
        "partialSum": total,
        "direct": direct,
        "relativeDifference": _relative(total, direct),
    }, None


_HANDLERS: dict[str, Callable[[CommandSpec, LaurentPolynomial | None, ToolConfig], Outcome]] = {
    "polytope": _run_polytope,
    "eval": _run_eval,
    "continue": _run_continue,
    "coamoeba": _run_coamoeba,
    "gkz": _run_gkz,
    "oracle": _run_oracle,
    "invert": _run_invert,
    "laurent": _run_laurent,
}


def run(spec: CommandSpec) -> ReportDocument:
    """Execute a CommandSpec; computational failures become an error report, usage errors still raise."""

    validate_spec(spec)
    report = ReportDocument(
        command=spec.subcommand,
        tool_version=__version__,
        generated_at=datetime.now(UTC) if spec.timestamp else None,
    )
    try:
        config = load_config(spec.config_file).data
        report.provenance = Provenance(
            input_sha256=sha256_file(spec.input) if spec.input is not None and spec.input.exists() else None,
            settings=config.model_dump(mode="json"),
        )
        f = load_polynomial(spec.input) if spec.input is not None else None
        result, quadrature = _HANDLERS[spec.subcommand](spec, f, config)
    except UsageError:
        raise
    except (PolyMellinError, ValueError) as exc:
        logger.warning("%s failed: %s", spec.subcommand, exc)
        report.status = "error"
        if isinstance(exc, PolyMellinError):
            report.error = ErrorInfo.from_exception(exc)
        else:
            report.error = ErrorInfo(module="cli", kind=type(exc).__name__, message=str(exc))
        return report
    report.provenance.quadrature = quadrature
    report.result = _plain(result)
    return report


def _plain(result: dict[str, Any]) -> dict[str, Any]:
    plain = to_plain_data(result)
    assert isinstance(plain, dict)
    return plain


FileOption = Annotated[Path, typer.Option("--file", "-f", help="Polynomial JSON file")]
OptionalFileOption = Annotated[Path | None, typer.Option("--file", "-f", help="Polynomial JSON file")]
SOption = Annotated[str | None, typer.Option("--s", help="Point s, e.g. 0.5,0.25 or 0.5+1j,0.25")]
ThetaOption = Annotated[str | None, typer.Option("--theta", help="Direction θ in radians; accepts pi/3")]
TolOption = Annotated[float | None, typer.Option("--tol", min=0.0, help="Relative quadrature tolerance")]
RadiusOption = Annotated[float | None, typer.Option("--radius", min=0.0, help="Truncation box radius")]
NodesOption = Annotated[int | None, typer.Option("--nodes", min=2, help="Initial nodes per axis")]
OutOption = Annotated[Path | None, typer.Option("--out", help="Write the JSON report here")]


@app.command("polytope")
def polytope_command(ctx: typer.Context, file: FileOption, out: OutOption = None) -> None:
    """Facets and faces of the Newton polytope."""

    _dispatch(ctx, CommandSpec(subcommand="polytope", input=file, out=out))


@app.command("eval")
def eval_command(
    ctx: typer.Context,
    file: FileOption,
    s: SOption = None,
    theta: ThetaOption = None,
    tol: TolOption = None,
    radius: RadiusOption = None,
    nodes: NodesOption = None,
    out: OutOption = None,
) -> None:
    """Directional Mellin transform of 1/f by quadrature."""

    _dispatch(
        ctx,
        CommandSpec(
            subcommand="eval",
            input=file,
            s=_parse(s, parse_complex_vector, "--s"),
            theta=_parse(theta, parse_angle_vector, "--theta"),
            tol=tol,
            radius=radius,
            nodes=nodes,
            out=out,
        ),
    )


@app.command("continue")
def continue_command(
    ctx: typer.Context,
    file: FileOption,
    m: Annotated[str | None, typer.Option("--m", help="Integration-by-parts counts per facet")] = None,
    s: SOption = None,
    theta: ThetaOption = None,
    phi: Annotated[bool, typer.Option("--phi", help="Also evaluate the entire factor Φ")] = False,
    tol: TolOption = None,
    radius: RadiusOption = None,
    nodes: NodesOption = None,
    out: OutOption = None,
) -> None:
    """Continued numerator g_m, pole factors and (with --s) the continued value."""

    _dispatch(
        ctx,
        CommandSpec(
            subcommand="continue",
            input=file,
            m=_parse(m, parse_int_vector, "--m"),
            s=_parse(s, parse_complex_vector, "--s"),
            theta=_parse(theta, parse_angle_vector, "--theta"),
            phi=phi,
            tol=tol,
            radius=radius,
            nodes=nodes,
            out=out,
        ),
    )


@app.command("coamoeba")
def coamoeba_command(
    ctx: typer.Context,
    file: FileOption,
    grid: Annotated[int | None, typer.Option("--grid", min=2, help="Sampling grid per axis")] = None,
    radius: Annotated[float | None, typer.Option("--radius", min=0.0, help="Log-modulus sampling radius")] = None,
    epsilon: Annotated[float | None, typer.Option("--epsilon", min=0.0, help="Non-vanishing PASS threshold")] = None,
    theta: ThetaOption = None,
    csv: Annotated[Path | None, typer.Option("--csv", help="Write the sampled cloud as CSV")] = None,
    out: OutOption = None,
) -> None:
    """Sample the closed coamoeba and check a direction θ."""

    _dispatch(
        ctx,
        CommandSpec(
            subcommand="coamoeba",
            input=file,
            grid=grid,
            radius=radius,
            epsilon=epsilon,
            theta=_parse(theta, parse_angle_vector, "--theta"),
            csv=csv,
            out=out,
        ),
    )


@app.command("gkz")
def gkz_command(
    ctx: typer.Context,
    file: FileOption,
    s: SOption = None,
    theta: ThetaOption = None,
    tol: TolOption = None,
    radius: RadiusOption = None,
    nodes: NodesOption = None,
    out: OutOption = None,
) -> None:
    """Kernel of A and the box/Euler residuals of the transform."""

    _dispatch(
        ctx,
        CommandSpec(
            subcommand="gkz",
            input=file,
            s=_parse(s, parse_complex_vector, "--s"),
            theta=_parse(theta, parse_angle_vector, "--theta"),
            tol=tol,
            radius=radius,
            nodes=nodes,
            out=out,
        ),
    )


@app.command("oracle")
def oracle_command(
    ctx: typer.Context,
    case: Annotated[OracleCase | None, typer.Option("--case", help="Closed form to compare against")] = None,
    file: OptionalFileOption = None,
    s: SOption = None,
    a: Annotated[str | None, typer.Option("--a", help="Coefficient vectors, ';'-separated")] = None,
    z: Annotated[str | None, typer.Option("--z", help="Log-coordinates for the partial-fractions check")] = None,
    theta: ThetaOption = None,
    tol: TolOption = None,
    radius: RadiusOption = None,
    nodes: NodesOption = None,
    out: OutOption = None,
) -> None:
    """Compare quadrature against a closed-form transform."""

    vectors = _parse(a, parse_vector_list, "--a")
    _dispatch(
        ctx,
        CommandSpec(
            subcommand="oracle",
            case=case,
            input=file,
            s=_parse(s, parse_complex_vector, "--s"),
            a=tuple(vectors) if vectors is not None else None,
            z=_parse(z, parse_float_vector, "--z"),
            theta=_parse(theta, parse_angle_vector, "--theta"),
            tol=tol,
            radius=radius,
            nodes=nodes,
            out=out,
        ),
    )


@app.command("invert")
def invert_command(
    ctx: typer.Context,
    file: FileOption,
    z: Annotated[str | None, typer.Option("--z", help="Log-modulus x of the evaluation point")] = None,
    sigma: Annotated[str | None, typer.Option("--sigma", help="Real part of the inversion contour")] = None,
    theta: ThetaOption = None,
    tol: TolOption = None,
    radius: RadiusOption = None,
    nodes: NodesOption = None,
    out: OutOption = None,
) -> None:
    """Invert the closed-form transform and compare with 1/f."""

    _dispatch(
        ctx,
        CommandSpec(
            subcommand="invert",
            input=file,
            z=_parse(z, parse_float_vector, "--z"),
            sigma=_parse(sigma, parse_float_vector, "--sigma"),
            theta=_parse(theta, parse_angle_vector, "--theta"),
            tol=tol,
            radius=radius,
            nodes=nodes,
            out=out,
        ),
    )


@app.command("laurent")
def laurent_command(
    ctx: typer.Context,
    file: FileOption,
    z: Annotated[str | None, typer.Option("--z", help="Log-modulus x selecting the expansion")] = None,
    alpha: Annotated[str | None, typer.Option("--alpha", help="Exponent of the coefficient")] = None,
    box: Annotated[str | None, typer.Option("--box", help="Exponent box for a partial sum, e.g. -3:3,-3:3")] = None,
    theta: ThetaOption = None,
    tol: TolOption = None,
    out: OutOption = None,
) -> None:
    """Laurent coefficients of 1/f on an amoeba complement component."""

    _dispatch(
        ctx,
        CommandSpec(
            subcommand="laurent",
            input=file,
            z=_parse(z, parse_float_vector, "--z"),
            alpha=_parse(alpha, parse_int_vector, "--alpha"),
            box=_parse(box, parse_box, "--box"),
            theta=_parse(theta, parse_angle_vector, "--theta"),
            tol=tol,
            out=out,
        ),
    )


@config_app.command("show")
def config_show(ctx: typer.Context) -> None:
    state = _state(ctx)
    if state.capture:
        raise click.UsageError("config commands are not computational subcommands", ctx=ctx)
    try:
        resolved = load_config(state.config_file)
    except PolyMellinError as exc:
        typer.echo(f"error: {exc}", err=True)
        raise typer.Exit(code=1) from exc
    payload: dict[str, Any] = resolved.data.model_dump(mode="json")
    payload["_source"] = resolved.source
    payload["_path"] = str(resolved.path) if resolved.path else None
    emit(payload, output=state.output)


@config_app.command("init")
def config_init(
    ctx: typer.Context,
    path: Annotated[Path, typer.Argument(help="Target file (.yaml/.yml/.json/.toml)")],
    force: Annotated[bool, typer.Option("--force", help="Overwrite an existing file")] = False,
) -> None:
    state = _state(ctx)
    if state.capture:
        raise click.UsageError("config commands are not computational subcommands", ctx=ctx)
    if path.exists() and not force:
        raise typer.BadParameter(f"{path} exists; pass --force to overwrite", param_hint="'PATH'")
    try:
        written = save_config(ToolConfig(), path)
    except PolyMellinError as exc:
        typer.echo(f"error: {exc}", err=True)
        raise typer.Exit(code=1) from exc
    typer.echo(f"wrote {written}")


if __name__ == "__main__":
    app()
