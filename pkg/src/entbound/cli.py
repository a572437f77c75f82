"""Command-line front end.

Evaluates bounds and witness verdicts on built-in noise families or
user-supplied matrix files, sweeps family parameters, solves detection
thresholds, and replays the six built-in benchmark cases.  Emits a human
table on stdout or csv/json via --format/--out; all floats print with
9 significant digits so identical invocations produce identical bytes.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import math
import sys
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass

from . import bounds as bounds_mod
from . import states
from .concurrence import pairwise_table, pure_concurrence
from .errors import ConvergenceFailure
from .states import DensityMatrix, NoisyFamily, load_density_matrix
from .witness import Source, detect_k_nonseparability, detection_threshold, k_nonsep_threshold

EXIT_OK = 0
EXIT_NO_DETECTION = 1
EXIT_INPUT = 2
EXIT_NUMERICAL = 3

FAMILY_NAMES = ("w-noise", "dicke-noise", "ex3", "ex4", "ghz-noise")
CLI_SOURCES = {
    "t1": Source.THEOREM1,
    "t2": Source.THEOREM2,
    "t3": Source.THEOREM3,
    "ghz-exact": Source.GHZ_EXACT,
}


def fmt(x) -> str:
    """9 significant digits, round-half-even (stable diffs)."""
    if isinstance(x, bool) or not isinstance(x, float):
        return str(x)
    return f"{x:.9g}"


def _round9(x: float) -> float:
    return float(f"{x:.9g}")


@dataclass(frozen=True)
class SweepSpec:
    family: str
    n_qubits: int
    param_grid: tuple[float, float, int]
    k: int | None
    sources: tuple[Source, ...]

    def __post_init__(self):
        start, stop, steps = self.param_grid
        if not (0.0 <= start <= stop <= 1.0) or steps < 2:
            raise ValueError("grid must satisfy 0 <= start <= stop <= 1 and steps >= 2")
        if self.family not in FAMILY_NAMES:
            raise ValueError(f"unknown family {self.family!r}")

    @property
    def grid(self) -> list[float]:
        start, stop, steps = self.param_grid
        return [start + (stop - start) * i / (steps - 1) for i in range(steps)]


def make_family(name: str, n: int, excitations: int | None = None) -> NoisyFamily:
    if name == "w-noise":
        return states.w_noise_family(n)
    if name == "dicke-noise":
        return states.dicke_noise_family(n, excitations)
    if name == "ghz-noise":
        return states.ghz_noise_family(n)
    if name in ("ex3", "ex4"):
        if n != 4:
            raise ValueError(f"family {name!r} is four-qubit only")
        return states.example3_family() if name == "ex3" else states.example4_family()
    raise ValueError(f"unknown family {name!r}")


def applicable_sources(n: int, family: str | None) -> list[Source]:
    out = []
    if n == 4:
        out.append(Source.THEOREM1)
    if n >= 5:
        out.append(Source.THEOREM2)
    if n >= 6 and n % 2 == 0:
        out.append(Source.THEOREM3)
    if family == "ghz-noise":
        out.append(Source.GHZ_EXACT)
    return out


# ---------------------------------------------------------------- output

def _write_text(text: str, out: str | None) -> None:
    if out:
        with open(out, "w", encoding="utf-8", newline="") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _render_table(header: list[str], rows: list[list]) -> str:
    cells = [[fmt(c) for c in row] for row in rows]
    widths = [max(len(h), *(len(r[i]) for r in cells)) if cells else len(h)
              for i, h in enumerate(header)]
    lines = ["  ".join(h.ljust(w) for h, w in zip(header, widths)).rstrip()]
    for row in cells:
        lines.append("  ".join(c.ljust(w) for c, w in zip(row, widths)).rstrip())
    return "\n".join(lines) + "\n"


def _render_csv(header: list[str], rows: list[list]) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(header)
    for row in rows:
        writer.writerow([fmt(c) for c in row])
    return buf.getvalue()


def _jsonable(obj):
    if isinstance(obj, float):
        return _round9(obj)
    if isinstance(obj, Source):
        return obj.value
    if isinstance(obj, dict):
        return {k: _jsonable(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_jsonable(v) for v in obj]
    return obj


def _render_json(doc) -> str:
    return json.dumps(_jsonable(doc), indent=2) + "\n"


def emit(header, rows, doc, args) -> None:
    if args.format == "json":
        _write_text(_render_json(doc), args.out)
    elif args.format == "csv":
        _write_text(_render_csv(header, rows), args.out)
    else:
        _write_text(_render_table(header, rows), args.out)


def _bound_report_dict(r: bounds_mod.BoundReport) -> dict:
    return {
        "theorem": r.theorem,
        "n_qubits": r.n_qubits,
        "pair_sum": r.pair_sum,
        "coefficient": r.coefficient,
        "bound_on_C2": r.bound_on_C2,
        "bound_on_C": r.bound_on_C,
    }


def _verdict_dict(v) -> dict:
    return {
        "n_parties": v.n_parties,
        "local_dim": v.local_dim,
        "k": v.k,
        "threshold": v.threshold,
        "certified_lower_bound_on_C": v.certified_lower_bound_on_C,
        "source": v.source,
        "detected": v.detected,
    }


# ---------------------------------------------------------------- input

def load_input_state(args) -> DensityMatrix:
    if args.state and args.family:
        raise ValueError("give either --state or --family, not both")
    if args.state:
        return load_density_matrix(args.state, clamp=args.clamp)
    if args.family:
        if args.param is None:
            raise ValueError("--family point evaluation needs --param")
        family = make_family(args.family, args.n, args.excitations)
        return family.state_at(args.param)
    raise ValueError("need --state FILE or --family NAME")


# ---------------------------------------------------------------- commands

def cmd_bound(args) -> int:
    rho = load_input_state(args)
    # below four qubits no theorem applies; still report the pair table
    table = pairwise_table(rho)
    reports = bounds_mod.best_bound(rho).reports if rho.n_qubits >= 4 else ()
    pair_rows = [[f"C_{i}_{j}", v] for (i, j), v in table.pairs()]
    bound_rows = [
        [r.theorem, r.n_qubits, r.pair_sum, r.coefficient, r.bound_on_C2, r.bound_on_C]
        for r in reports
    ]
    doc = {
        "n_qubits": rho.n_qubits,
        "pairwise": [
            {"i": i, "j": j, "value": v} for (i, j), v in table.pairs()
        ],
        "bounds": [_bound_report_dict(r) for r in reports],
    }
    if args.format == "json":
        _write_text(_render_json(doc), args.out)
    elif args.format == "csv":
        # single file, two record kinds: the pair table and the bounds
        header = ["record", "pair", "value", "theorem", "n_qubits", "pair_sum",
                  "coefficient", "bound_on_C2", "bound_on_C"]
        rows = [["pairwise", name, v, "", "", "", "", "", ""] for name, v in pair_rows]
        rows += [["bound", "", ""] + row for row in bound_rows]
        _write_text(_render_csv(header, rows), args.out)
    else:
        text = _render_table(["pair", "concurrence"], pair_rows)
        text += _render_table(
            ["theorem", "n_qubits", "pair_sum", "coefficient", "bound_on_C2", "bound_on_C"],
            bound_rows,
        )
        _write_text(text, args.out)
    return EXIT_OK


def cmd_witness(args) -> int:
    rho = load_input_state(args)
    ks = args.k or [2]
    sources = [CLI_SOURCES[s] for s in args.source] if args.source else applicable_sources(
        rho.n_qubits, args.family
    )
    if not sources:
        raise ValueError(f"no bound source applies to {rho.n_qubits} qubits")
    verdicts = [
        detect_k_nonseparability(rho, k, source) for k in ks for source in sources
    ]
    header = [
        "n_parties", "local_dim", "k", "threshold",
        "certified_lower_bound_on_C", "source", "detected",
    ]
    rows = [
        [v.n_parties, v.local_dim, v.k, v.threshold,
         v.certified_lower_bound_on_C, v.source.value, v.detected]
        for v in verdicts
    ]
    emit(header, rows, {"verdicts": [_verdict_dict(v) for v in verdicts]}, args)
    if args.require_detection and not all(v.detected for v in verdicts):
        return EXIT_NO_DETECTION
    return EXIT_OK


def _sweep_point(family, spec: SweepSpec, x: float) -> dict:
    rho = family.state_at(x)
    table = pairwise_table(rho)
    point = {"param": x, "pairwise": dict(table.pairs())}
    for source in spec.sources:
        if source is Source.GHZ_EXACT:
            bound_c = bounds_mod.ghz_noise_exact_concurrence(spec.n_qubits, x)
            point[source] = {"bound_on_C2": bound_c**2, "bound_on_C": bound_c}
        else:
            theorem = {Source.THEOREM1: bounds_mod.theorem1_bound,
                       Source.THEOREM2: bounds_mod.theorem2_bound,
                       Source.THEOREM3: bounds_mod.theorem3_bound}[source]
            r = theorem(table)
            point[source] = {"bound_on_C2": r.bound_on_C2, "bound_on_C": r.bound_on_C}
    return point


def cmd_sweep(args) -> int:
    if not args.family:
        raise ValueError("sweep needs --family")
    if not args.grid:
        raise ValueError("sweep needs --grid start:stop:steps")
    family = make_family(args.family, args.n, args.excitations)
    sources = tuple(
        CLI_SOURCES[s] for s in args.source
    ) if args.source else tuple(applicable_sources(family.n_qubits, args.family))
    if not sources:
        raise ValueError(f"no bound source applies to {family.n_qubits} qubits")
    spec = SweepSpec(args.family, family.n_qubits, args.grid, args.k, sources)

    threshold = None if spec.k is None else k_nonsep_threshold(spec.n_qubits, 2, spec.k)
    with ThreadPoolExecutor(max_workers=4) as pool:
        points = list(pool.map(lambda x: _sweep_point(family, spec, x), spec.grid))

    pair_keys = sorted(points[0]["pairwise"]) if points else []
    header = ["param"] + [f"C_{i}_{j}" for i, j in pair_keys]
    for source in sources:
        header += [f"bound_on_C2[{source.value}]", f"bound_on_C[{source.value}]"]
    if threshold is not None:
        header += ["threshold"] + [f"detected[{s.value}]" for s in sources]
    rows = []
    for point in points:
        row = [point["param"]] + [point["pairwise"][k] for k in pair_keys]
        for source in sources:
            row += [point[source]["bound_on_C2"], point[source]["bound_on_C"]]
        if threshold is not None:
            row.append(threshold)
            row += [point[s]["bound_on_C"] > threshold for s in sources]
        rows.append(row)

    crossings = []
    for source in sources:
        x = detection_threshold(family, spec.k, source)
        crossings.append({
            "source": source,
            "k": spec.k,
            "crossing": x if x is not None else None,
        })

    doc = {
        "family": spec.family,
        "n_qubits": spec.n_qubits,
        "k": spec.k,
        "threshold": threshold,
        "rows": [
            {h: _jsonable(v) for h, v in zip(header, row)} for row in rows
        ],
        "crossings": crossings,
    }
    emit(header, rows, doc, args)
    # json embeds the crossings; for csv piped to stdout, keep the stream clean
    if args.format == "table" or (args.format == "csv" and args.out):
        for c in crossings:
            where = fmt(c["crossing"]) if c["crossing"] is not None else "no crossing"
            label = "entanglement" if spec.k is None else f"k={spec.k}"
            print(f"crossing[{c['source'].value}, {label}] = {where}")
    return EXIT_OK


def cmd_threshold(args) -> int:
    if not args.family:
        raise ValueError("threshold needs --family")
    family = make_family(args.family, args.n, args.excitations)
    sources = [CLI_SOURCES[s] for s in args.source] if args.source else applicable_sources(
        family.n_qubits, args.family
    )
    if not sources:
        raise ValueError(f"no bound source applies to {family.n_qubits} qubits")
    crossings = [(source, detection_threshold(family, args.k, source))
                 for source in sources]
    rows = [
        [args.family, family.n_qubits,
         "ent" if args.k is None else args.k,
         source.value,
         fmt(x) if x is not None else "no crossing"]
        for source, x in crossings
    ]
    doc = {
        "family": args.family,
        "n_qubits": family.n_qubits,
        "k": args.k,
        "crossings": [{"source": s, "crossing": x} for s, x in crossings],
    }
    emit(["family", "n_qubits", "k", "source", "crossing"], rows, doc, args)
    return EXIT_OK


# ---------------------------------------------------------------- reproduce

def _grid01(steps: int = 101) -> list[float]:
    return [i / (steps - 1) for i in range(steps)]


class _CaseChecker:
    def __init__(self, case: int, title: str):
        self.ok = True
        print(f"case {case}: {title}")

    def check(self, label: str, err: float, tol: float) -> None:
        good = err <= tol
        self.ok &= good
        status = "ok  " if good else "FAIL"
        print(f"  {status} {label}: err={err:.3e} (tol {fmt(tol)})")

    def check_value(self, label: str, got: float, expected: float, tol: float) -> None:
        good = abs(got - expected) <= tol
        self.ok &= good
        status = "ok  " if good else "FAIL"
        print(
            f"  {status} {label}: computed={fmt(got)} expected={fmt(expected)}"
            f" (tol {fmt(tol)})"
        )


def _pairwise_grid_error(family, closed_forms) -> float:
    """Worst |computed - closed form| over a 101-point grid and all pairs."""
    worst = 0.0
    for x in _grid01():
        table = pairwise_table(family.state_at(x))
        for (i, j), value in table.pairs():
            worst = max(worst, abs(value - closed_forms(i, j, x)))
    return worst


def _t1_coefficient_error(family, pair_coeff: float) -> float:
    """Worst |T1 bound - pair_coeff * C12^2| over the grid."""
    worst = 0.0
    for x in _grid01():
        table = pairwise_table(family.state_at(x))
        r = bounds_mod.theorem1_bound(table)
        worst = max(worst, abs(r.bound_on_C2 - pair_coeff * table.value(1, 2) ** 2))
    return worst


def _case1() -> bool:
    family = states.w_noise_family(4)
    c = _CaseChecker(1, "four-qubit W state + white noise")
    closed = lambda i, j, t: max(0.0, (t - math.sqrt(1 - t * t)) / 2)
    c.check("pairwise closed form max{0,(t-sqrt(1-t^2))/2}, 101-pt grid",
            _pairwise_grid_error(family, closed), 1e-9)
    c.check("T1 bound equals 21/4 C12^2 on grid", _t1_coefficient_error(family, 21 / 4), 1e-12)
    return c.ok


def _case2() -> bool:
    family = states.dicke_noise_family(4, 2)
    c = _CaseChecker(2, "four-qubit two-excitation Dicke state + white noise")
    closed = lambda i, j, t: max(0.0, (5 * t - 3) / 6)
    c.check("pairwise closed form max{0,(5t-3)/6}, 101-pt grid",
            _pairwise_grid_error(family, closed), 1e-9)
    c.check("T1 bound equals 21/4 C12^2 on grid", _t1_coefficient_error(family, 21 / 4), 1e-12)
    x = detection_threshold(family, None, Source.THEOREM1)
    c.check_value("entanglement crossing via T1", x, 0.6, 1e-4)
    lo, hi = bounds_mod.PRIOR_DICKE_DETECTION_THRESHOLDS
    ordered = x < lo < hi
    c.check("crossing strictly below prior thresholds 0.618034 < 0.636364",
            0.0 if ordered else 1.0, 0.5)
    return c.ok


def _case3() -> bool:
    family = states.example3_family()
    c = _CaseChecker(3, "four-qubit pair-cycle state + white noise")

    def closed(i, j, a):
        if (i, j) in ((1, 3), (2, 4)):
            return 0.0
        return max(0.0, (a - math.sqrt(1 - a)) / 2)

    c.check("pairwise closed form (cycle pairs (a-sqrt(1-a))/2, diagonals 0)",
            _pairwise_grid_error(family, closed), 1e-9)
    c.check("T1 bound equals 7/2 C12^2 on grid", _t1_coefficient_error(family, 7 / 2), 1e-12)
    return c.ok


def _case4() -> bool:
    family = states.example4_family()
    c = _CaseChecker(4, "Bell-pair product state + white noise")

    def closed(i, j, t):
        if (i, j) in ((1, 2), (3, 4)):
            return max(0.0, (3 * t - 1) / 2)
        return 0.0

    c.check("pairwise closed form (C12=C34=max{0,(3t-1)/2}, rest 0)",
            _pairwise_grid_error(family, closed), 1e-9)
    c.check("T1 bound equals 7/4 C12^2 on grid", _t1_coefficient_error(family, 7 / 4), 1e-12)
    x = detection_threshold(family, None, Source.THEOREM1)
    c.check_value("entanglement crossing via T1", x, 1 / 3, 1e-4)
    r = bounds_mod.theorem1_bound(pairwise_table(family.state_at(1.0)))
    c.check_value("T1 bound on C^2 at t=1 (saturation)", r.bound_on_C2, 7 / 4, 1e-9)
    c.check_value("pure concurrence of the noiseless state",
                  pure_concurrence(states.example4_state()), math.sqrt(7) / 2, 1e-9)
    return c.ok


def _case5() -> bool:
    family = states.example4_family()
    c = _CaseChecker(5, "3-nonseparability witness on the Bell-pair family")
    c.check_value("threshold(n=4, d=2, k=3)", k_nonsep_threshold(4, 2, 3),
                  math.sqrt(22) / 4, 1e-12)
    x = detection_threshold(family, 3, Source.THEOREM1)
    c.check_value("detection crossing via T1, k=3", x, 0.9243, 1e-4)
    above = detect_k_nonseparability(family.state_at(0.93), 3, Source.THEOREM1)
    below = detect_k_nonseparability(family.state_at(0.92), 3, Source.THEOREM1)
    c.check("detected at t=0.93 and not at t=0.92",
            0.0 if (above.detected and not below.detected) else 1.0, 0.5)
    return c.ok


def _case6() -> bool:
    c = _CaseChecker(6, "GHZ state + white noise, exact concurrence")
    worst_pure = 0.0
    worst_edge = 0.0
    for n in range(2, 9):
        exact = bounds_mod.ghz_noise_exact_concurrence(n, 1.0)
        worst_pure = max(worst_pure, abs(exact - pure_concurrence(states.ghz_state(n))))
        edge = bounds_mod.ghz_noise_separability_edge(n)
        worst_edge = max(worst_edge, abs(bounds_mod.ghz_noise_exact_concurrence(n, edge)))
    c.check("exact formula at p=1 equals pure GHZ concurrence, n=2..8", worst_pure, 1e-10)
    c.check("exact formula vanishes at the separability edge, n=2..8", worst_edge, 1e-12)
    family = states.ghz_noise_family(4)
    x = detection_threshold(family, 3, Source.GHZ_EXACT)
    c.check_value("detection crossing, exact bound, k=3", x, 0.8991, 1e-4)
    above = detect_k_nonseparability(family.state_at(0.90), 3, Source.GHZ_EXACT)
    below = detect_k_nonseparability(family.state_at(0.89), 3, Source.GHZ_EXACT)
    c.check("detected at p=0.90 and not at p=0.89",
            0.0 if (above.detected and not below.detected) else 1.0, 0.5)
    return c.ok


_CASES = {1: _case1, 2: _case2, 3: _case3, 4: _case4, 5: _case5, 6: _case6}


def cmd_reproduce(args) -> int:
    if args.case == "all":
        numbers = sorted(_CASES)
    else:
        try:
            numbers = [int(args.case)]
        except ValueError:
            raise ValueError(f"case must be 1..6 or 'all', got {args.case!r}") from None
        if numbers[0] not in _CASES:
            raise ValueError(f"case must be 1..6 or 'all', got {args.case!r}")
    all_ok = True
    for number in numbers:
        ok = _CASES[number]()
        print(f"{'PASS' if ok else 'FAIL'} case {number}")
        all_ok &= ok
    return EXIT_OK if all_ok else EXIT_NUMERICAL


# ---------------------------------------------------------------- parser

def _add_io_flags(p: argparse.ArgumentParser) -> None:
    p.add_argument("--state", help="density-matrix file (JSON or CSV)")
    p.add_argument("--clamp", action="store_true",
                   help="repair near-PSD input matrices instead of rejecting")
    p.add_argument("--family", choices=FAMILY_NAMES)
    p.add_argument("--n", type=int, default=4, help="qubit count for --family")
    p.add_argument("--excitations", type=int, default=None,
                   help="excitation number for dicke-noise (default n//2)")
    p.add_argument("--param", type=float, help="family parameter in [0, 1]")
    p.add_argument("--format", choices=("table", "csv", "json"), default="table")
    p.add_argument("--out", help="write the report to this file instead of stdout")
    p.add_argument("--seed", type=int, default=0,
                   help="seed for sampling paths (reserved; current commands are deterministic)")


def _parse_grid(text: str) -> tuple[float, float, int]:
    parts = text.split(":")
    if len(parts) != 3:
        raise argparse.ArgumentTypeError("grid must be start:stop:steps")
    return float(parts[0]), float(parts[1]), int(parts[2])


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="entbound",
        description="Concurrence lower bounds and k-nonseparability witnesses "
                    "for N-qubit states.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("bound", help="pairwise concurrences and every applicable bound")
    _add_io_flags(p)
    p.set_defaults(func=cmd_bound)

    p = sub.add_parser("witness", help="k-nonseparability verdicts")
    _add_io_flags(p)
    p.add_argument("--k", type=int, action="append", help="repeatable; default 2")
    p.add_argument("--source", action="append", choices=sorted(CLI_SOURCES))
    p.add_argument("--require-detection", action="store_true",
                   help="exit 1 unless every requested verdict detects")
    p.set_defaults(func=cmd_witness)

    p = sub.add_parser("sweep", help="evaluate a family over a parameter grid")
    _add_io_flags(p)
    p.add_argument("--grid", type=_parse_grid, help="start:stop:steps")
    p.add_argument("--k", type=int, default=None,
                   help="witness k; omit for plain entanglement detection")
    p.add_argument("--source", action="append", choices=sorted(CLI_SOURCES))
    p.set_defaults(func=cmd_sweep)

    p = sub.add_parser("threshold", help="solve the detection crossing parameter")
    _add_io_flags(p)
    p.add_argument("--k", type=int, default=None,
                   help="witness k; omit for plain entanglement detection")
    p.add_argument("--source", action="append", choices=sorted(CLI_SOURCES))
    p.set_defaults(func=cmd_threshold)

    p = sub.add_parser("reproduce", help="replay the built-in benchmark cases")
    p.add_argument("case", help="1..6 or 'all'")
    p.set_defaults(func=cmd_reproduce)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except ConvergenceFailure as exc:
        print(f"error: numerical failure: {exc}", file=sys.stderr)
        return EXIT_NUMERICAL
    except (ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
