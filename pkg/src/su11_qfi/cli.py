"""Command-line front end.

Subcommands:
    point      one (input, amplifier, configuration) evaluation, JSON output
    sweep-eta  phase-estimation bound vs input photon split, CSV output
    sweep-nin  optimal QFI vs total input photon number, CSV output
    verify     cross-path agreement and identity checks, pass/fail table

Exit codes: 0 ok, 1 verification failure, 2 usage error, 3 infeasible
parameters (truncated-basis cutoff cap exceeded).
"""

from __future__ import annotations

import argparse
import json
import math
import sys
from collections import Counter
from dataclasses import dataclass
from typing import Optional, Sequence

from . import __version__, fock_oracle, verification
from .errors import DomainError, InfeasibleParametersError
from .gaussian_core import (
    CoherentSqueezed,
    ComplexAmplitude,
    InputSpec,
    NbsParams,
    SqueezeParams,
    TwoCoherent,
    apply_nbs,
    prepare_input,
)
from .moments import expected_n_squared, photon_moments
from .qfi import (
    ComputationPath,
    PhaseConfiguration,
    optimal_coherent_squeezed_qfi,
    optimal_two_coherent_qfi,
)

_CONFIG_BY_FLAG = {
    "upper": PhaseConfiguration.UPPER_ARM,
    "lower": PhaseConfiguration.LOWER_ARM,
    "two-arm": PhaseConfiguration.TWO_ARM,
}
_PATH_BY_FLAG = {
    "closed": ComputationPath.CLOSED_FORM,
    "gaussian": ComputationPath.GENERATOR_VARIANCE,
    "oracle": ComputationPath.FOCK_ORACLE,
}


class UsageError(Exception):
    """Invalid flag combination or value; maps to exit code 2."""


def _fmt(value: float) -> str:
    """17 significant digits: round-trip exact for doubles."""
    return format(float(value), ".17g")


@dataclass(frozen=True)
class EtaRow:
    eta: float
    fisher_upper: float
    fisher_lower: float
    fisher_two_arm: float

    def qcrb_columns(self) -> tuple[float, float, float]:
        return (
            1.0 / math.sqrt(self.fisher_upper),
            1.0 / math.sqrt(self.fisher_lower),
            1.0 / math.sqrt(self.fisher_two_arm),
        )


@dataclass(frozen=True)
class NinRow:
    n_in: float
    qfi_two_coherent: float
    qfi_coherent_squeezed: float
    hofmann_n2: float


def sweep_eta_rows(input_kind: str, n_in: float, g: float, points: int) -> list[EtaRow]:
    """Closed-form sweep over the photon split at the phase-matched optima.

    The grid is built from mirror pairs (eta, 1 - eta) that reuse the same
    photon-number products, so the swap symmetry of the two-coherent sweep
    (upper column at eta equals lower column at 1 - eta) holds bitwise.
    """
    if n_in < 0.0:
        raise UsageError(f"--n-in must be non-negative, got {n_in}")
    if points < 2:
        raise UsageError(f"--points must be at least 2, got {points}")
    if n_in == 0.0 and g == 0.0:
        raise InfeasibleParametersError(
            "vacuum input with the amplifier off has zero Fisher information"
        )
    last = points - 1
    rows: list[Optional[EtaRow]] = [None] * points
    for i in range(points):
        j = last - i
        if i > j:
            break
        frac = i / last
        comp = 1.0 - frac
        n_b_low = frac * n_in
        n_a_low = comp * n_in
        rows[i] = _eta_row(input_kind, frac, n_a_low, n_b_low, g)
        if j != i:
            rows[j] = _eta_row(input_kind, comp, n_b_low, n_a_low, g)
    return [row for row in rows if row is not None]


def _eta_row(input_kind: str, eta: float, n_alpha: float, n_beta: float, g: float) -> EtaRow:
    from .qfi import closed_form_coherent_squeezed, closed_form_two_coherent

    if input_kind == "two-coherent":
        fishers = [
            closed_form_two_coherent(cfg, n_alpha, n_beta, math.pi, 0.0, g, 0.0)
            for cfg in (
                PhaseConfiguration.UPPER_ARM,
                PhaseConfiguration.LOWER_ARM,
                PhaseConfiguration.TWO_ARM,
            )
        ]
    elif input_kind == "coherent-squeezed":
        r = math.asinh(math.sqrt(n_beta))
        fishers = [
            closed_form_coherent_squeezed(cfg, n_alpha, 0.0, r, math.pi, g, 0.0)
            for cfg in (
                PhaseConfiguration.UPPER_ARM,
                PhaseConfiguration.LOWER_ARM,
                PhaseConfiguration.TWO_ARM,
            )
        ]
    else:
        raise UsageError(f"unknown input kind {input_kind!r}")
    if min(fishers) <= 0.0:
        raise InfeasibleParametersError(f"zero Fisher information at eta={eta}")
    return EtaRow(eta, *fishers)


def sweep_nin_rows(g: float, n_max: float, points: int) -> list[NinRow]:
    """Optimal QFIs and the <N^2> bound against total input photons."""
    if n_max <= 0.0:
        raise UsageError(f"--n-max must be positive, got {n_max}")
    if points < 2:
        raise UsageError(f"--points must be at least 2, got {points}")
    rows = []
    last = points - 1
    for i in range(points):
        n_in = n_max * (i / last)
        r = math.asinh(math.sqrt(n_in))
        state = apply_nbs(
            prepare_input(
                CoherentSqueezed(ComplexAmplitude(0.0), SqueezeParams(r, math.pi))
            ),
            NbsParams(g, 0.0),
        )
        rows.append(
            NinRow(
                n_in=n_in,
                qfi_two_coherent=optimal_two_coherent_qfi(n_in, g),
                qfi_coherent_squeezed=optimal_coherent_squeezed_qfi(n_in, g),
                hofmann_n2=expected_n_squared(photon_moments(state)),
            )
        )
    return rows


def _emit(lines: list[str], out: Optional[str]) -> None:
    text = "\n".join(lines) + "\n"
    if out:
        with open(out, "w", encoding="utf-8") as handle:
            handle.write(text)
    else:
        sys.stdout.write(text)


def _build_input(args: argparse.Namespace) -> tuple[InputSpec, NbsParams]:
    def took(name: str) -> bool:
        return getattr(args, name) is not None

    def value(name: str, default: float = 0.0) -> float:
        raw = getattr(args, name)
        return default if raw is None else raw

    if args.input == "two-coherent":
        for flag in ("r", "theta_varsigma"):
            if took(flag):
                raise UsageError(f"--{flag.replace('_', '-')} is only valid with coherent-squeezed input")
        spec: InputSpec = TwoCoherent(
            alpha=ComplexAmplitude(math.sqrt(value("n_alpha")), value("theta_alpha")),
            beta=ComplexAmplitude(math.sqrt(value("n_beta")), value("theta_beta")),
        )
    else:
        for flag in ("n_beta", "theta_beta"):
            if took(flag):
                raise UsageError(f"--{flag.replace('_', '-')} is only valid with two-coherent input")
        spec = CoherentSqueezed(
            alpha=ComplexAmplitude(math.sqrt(value("n_alpha")), value("theta_alpha")),
            squeeze=SqueezeParams(value("r"), value("theta_varsigma")),
        )
    return spec, NbsParams(args.g, value("theta_g"))


def _nonneg(name: str, raw: Optional[float]) -> None:
    if raw is not None and raw < 0.0:
        raise UsageError(f"--{name} must be non-negative, got {raw}")


def cmd_point(args: argparse.Namespace) -> int:
    for name in ("n_alpha", "n_beta", "r", "g"):
        _nonneg(name.replace("_", "-"), getattr(args, name))
    spec, params = _build_input(args)
    configs = list(_CONFIG_BY_FLAG.values()) if args.config == "all" else [_CONFIG_BY_FLAG[args.config]]
    paths = list(_PATH_BY_FLAG.values()) if args.path == "all" else [_PATH_BY_FLAG[args.path]]
    results = []
    for config in configs:
        for path in paths:
            res = verification.compute_point(spec, params, config, path, args.max_cutoff)
            results.append(
                {
                    "config": config.value,
                    "path": path.value,
                    "fisher": res.fisher,
                    "qcrb": res.qcrb,
                }
            )
    if isinstance(spec, TwoCoherent):
        echo = {
            "kind": "two-coherent",
            "n_alpha": spec.alpha.mean_photons,
            "theta_alpha": spec.alpha.phase,
            "n_beta": spec.beta.mean_photons,
            "theta_beta": spec.beta.phase,
        }
    else:
        echo = {
            "kind": "coherent-squeezed",
            "n_alpha": spec.alpha.mean_photons,
            "theta_alpha": spec.alpha.phase,
            "r": spec.squeeze.r,
            "theta_varsigma": spec.squeeze.theta,
        }
    document = {
        "schema": 1,
        "input": echo,
        "amplifier": {"g": params.gain, "theta_g": params.pump_phase},
        "results": results,
    }
    _emit([json.dumps(document, indent=2, sort_keys=True)], args.out)
    return 0


def cmd_sweep_eta(args: argparse.Namespace) -> int:
    rows = sweep_eta_rows(args.input, args.n_in, args.g, args.points)
    lines = ["eta,qcrb_upper,qcrb_lower,qcrb_two_arm"]
    for row in rows:
        up, lo, two = row.qcrb_columns()
        lines.append(f"{_fmt(row.eta)},{_fmt(up)},{_fmt(lo)},{_fmt(two)}")
    _emit(lines, args.out)
    if args.plot:
        from . import plotting

        up, lo, two = zip(*(row.qcrb_columns() for row in rows))
        plotting.render_eta_sweep(
            [row.eta for row in rows], up, lo, two, args.plot,
            title=f"{args.input}, N_in={args.n_in:g}, g={args.g:g}",
        )
    return 0


def cmd_sweep_nin(args: argparse.Namespace) -> int:
    rows = sweep_nin_rows(args.g, args.n_max, args.points)
    lines = ["n_in,qfi_opt_two_coherent,qfi_opt_coherent_squeezed,hofmann_n2"]
    for row in rows:
        lines.append(
            f"{_fmt(row.n_in)},{_fmt(row.qfi_two_coherent)},"
            f"{_fmt(row.qfi_coherent_squeezed)},{_fmt(row.hofmann_n2)}"
        )
    _emit(lines, args.out)
    if args.plot:
        from . import plotting

        plotting.render_nin_sweep(
            [row.n_in for row in rows],
            [row.qfi_two_coherent for row in rows],
            [row.qfi_coherent_squeezed for row in rows],
            [row.hofmann_n2 for row in rows],
            args.plot,
            title=f"optimal inputs, g={args.g:g}",
        )
    return 0


def cmd_verify(args: argparse.Namespace) -> int:
    results = verification.run_suite(args.grid, args.max_cutoff)
    by_name: dict[str, list[verification.CheckResult]] = {}
    for result in results:
        by_name.setdefault(result.name, []).append(result)
    width = max(len(name) for name in by_name)
    print(f"{'check':<{width}}  points  worst      tolerance  status")
    for name, group in by_name.items():
        worst = max(group, key=lambda res: res.measured / res.tolerance)
        status = "pass" if all(res.passed for res in group) else "FAIL"
        print(
            f"{name:<{width}}  {len(group):>6}  {worst.measured:9.3e}  "
            f"{worst.tolerance:9.0e}  {status}"
        )
    failures = [res for res in results if not res.passed]
    if failures:
        print(f"\n{len(failures)} failing point(s):")
        for res in failures:
            print(f"  {res}")
    counts = Counter(res.passed for res in results)
    print(f"\n{counts[True]}/{len(results)} checks passed on grid '{args.grid}'")
    return 1 if failures else 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="su11-qfi",
        description=(
            "Quantum Fisher information and Cramer-Rao bounds of an SU(1,1) "
            "interferometer, by closed forms, Gaussian generator variance, "
            "and a truncated Fock-space oracle."
        ),
    )
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    point = sub.add_parser("point", help="evaluate one parameter point (JSON)")
    point.add_argument("--input", required=True, choices=("two-coherent", "coherent-squeezed"))
    point.add_argument("--n-alpha", type=float, default=None, help="mean photons of the mode-a coherent input")
    point.add_argument("--theta-alpha", type=float, default=None)
    point.add_argument("--n-beta", type=float, default=None, help="mean photons of the mode-b coherent input")
    point.add_argument("--theta-beta", type=float, default=None)
    point.add_argument("--r", type=float, default=None, help="squeezing strength of the mode-b input")
    point.add_argument("--theta-varsigma", type=float, default=None)
    point.add_argument("--g", type=float, required=True, help="amplifier strength")
    point.add_argument("--theta-g", type=float, default=None)
    point.add_argument("--config", choices=(*_CONFIG_BY_FLAG, "all"), default="two-arm")
    point.add_argument("--path", choices=(*_PATH_BY_FLAG, "all"), default="closed")
    point.add_argument("--max-cutoff", type=int, default=fock_oracle.MAX_CUTOFF)
    point.add_argument("--out", help="write JSON here instead of stdout")
    point.set_defaults(func=cmd_point)

    sweep_eta = sub.add_parser("sweep-eta", help="bound vs input photon split (CSV)")
    sweep_eta.add_argument("--input", required=True, choices=("two-coherent", "coherent-squeezed"))
    sweep_eta.add_argument("--n-in", type=float, default=200.0, help="total input mean photon number")
    sweep_eta.add_argument("--g", type=float, default=1.5)
    sweep_eta.add_argument("--points", type=int, default=201)
    sweep_eta.add_argument("--out", help="write CSV here instead of stdout")
    sweep_eta.add_argument("--plot", help="also render the sweep to this figure file")
    sweep_eta.set_defaults(func=cmd_sweep_eta)

    sweep_nin = sub.add_parser("sweep-nin", help="optimal QFI vs total input photons (CSV)")
    sweep_nin.add_argument("--g", type=float, default=1.5)
    sweep_nin.add_argument("--n-max", type=float, default=200.0)
    sweep_nin.add_argument("--points", type=int, default=201)
    sweep_nin.add_argument("--out", help="write CSV here instead of stdout")
    sweep_nin.add_argument("--plot", help="also render the sweep to this figure file")
    sweep_nin.set_defaults(func=cmd_sweep_nin)

    verify = sub.add_parser("verify", help="run the cross-path verification suite")
    verify.add_argument("--grid", choices=sorted(verification.GRIDS), default="small")
    # The heaviest full-grid point needs one doubling beyond the oracle's
    # default cap to certify its cutoff stability, so verify is more generous.
    verify.add_argument("--max-cutoff", type=int, default=2 * fock_oracle.MAX_CUTOFF)
    verify.set_defaults(func=cmd_verify)
    return parser


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except DomainError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except InfeasibleParametersError as exc:
        print(f"infeasible: {exc}", file=sys.stderr)
        return 3


def run() -> None:
    raise SystemExit(main())


if __name__ == "__main__":
    run()
