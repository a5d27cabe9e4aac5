"""Command-line front end: suite orchestration and bit-exact reporting.

Subcommands: check-relations, check-projection, qdet, hc-image,
eigenvalue, symfun, invariants, normal-form.  Verification subcommands
emit the report schema

    {"version": "1", "spec": ..., "params": {"n", "m", "K", "c"},
     "checks": [{"name", "instance", "pass", "witness"?}, ...]}

with every rational serialized as a "p/q" string, a fixed key order, and
checks sorted by (name, instance), so reports are byte-identical whatever
the parallelism degree.  Exit codes: 0 all pass, 1 verification failure,
2 usage or resource error.  YANGCHECK_JOBS sets the default worker count;
a simple key=value config file may supply defaults for any flag.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from concurrent.futures import ThreadPoolExecutor
from fractions import Fraction

from .exprparse import ExprError, parse_expr, print_expr, to_element
from .invariants import (
    _allowed_corner_triples,
    check_generation_bound,
    independence_report,
    parity_identity_holds,
    parity_status,
    stability_check,
)
from .lie import AlgebraSpec
from .matrices import build_S_eta, build_Sigma, build_T_eta, build_T_phi, build_phi_tensor
from .pbw import (
    UEAElement,
    commutator,
    gelfand_invariant,
    hc_omega,
    hc_order,
    highest_weight_eigenvalue,
    ideal_order,
)
from .poly import MultiPoly, as_poly, format_fraction
from .relations import (
    CheckReport,
    _PairProducts,
    check_centralizer_images,
    check_lie_axioms,
    check_linear_commutators,
    check_projection_coherence,
    check_reflection,
    check_symmetry,
    check_ternary,
    qdet,
    sort_reports,
)
from .symfun import chi_series, generators_A, generators_BCD, project_pi, wprime_invariance_check

MAX_RANK = 4
MAX_ORDER = 8
VERSION = "1"


class ResourceLimit(RuntimeError):
    pass


def _parse_c(text: str):
    if text in (None, "sym", "symbolic"):
        return MultiPoly.variable("c"), "sym"
    q = Fraction(text)
    return as_poly(q), format_fraction(q)


def _guard(spec: AlgebraSpec, K: int):
    if spec.rank > MAX_RANK or K > MAX_ORDER:
        raise ResourceLimit(
            f"instance too large for desk-scale verification: rank {spec.rank} (max {MAX_RANK}),"
            f" order {K} (max {MAX_ORDER}); lower --n / --order instead of truncating silently"
        )


def _chunks(items, n):
    n = max(1, n)
    size = max(1, (len(items) + n - 1) // n)
    return [items[k: k + size] for k in range(0, len(items), size)]


def _run_tasks(tasks, jobs: int):
    if jobs <= 1 or len(tasks) <= 1:
        results = [t() for t in tasks]
    else:
        with ThreadPoolExecutor(max_workers=jobs) as pool:
            results = list(pool.map(lambda t: t(), tasks))
    out = []
    for chunk in results:
        out.extend(chunk)
    return sort_reports(out)


# -- suites -------------------------------------------------------------------


def suite_relations(spec: AlgebraSpec, K: int, c, jobs: int, perturb: bool):
    from itertools import product

    reports = []
    if spec.family == "A":
        all_tuples = list(product(spec.index_set(), repeat=4))
        T = build_T_eta(spec, K)
        prods = _PairProducts(T)
        tasks = [
            (lambda chunk=chunk: check_ternary(T, perturb=perturb, tuples=chunk, products=prods))
            for chunk in _chunks(all_tuples, jobs * 4)
        ]
        for r in _run_tasks(tasks, jobs):
            reports.append(CheckReport("eta-" + r.name, r.instance, r.passed, r.witness))
        Tp = build_T_phi(spec, K, c)
        prods_p = _PairProducts(Tp)
        tasks = [
            (lambda chunk=chunk: check_ternary(Tp, perturb=perturb, tuples=chunk, products=prods_p))
            for chunk in _chunks(all_tuples, jobs * 4)
        ]
        for r in _run_tasks(tasks, jobs):
            reports.append(CheckReport("phi-" + r.name, r.instance, r.passed, r.witness))
    else:
        S = build_S_eta(spec, K, sign_flip=perturb)
        all_tuples = list(product(spec.index_set(), repeat=4))
        prods = _PairProducts(S)
        tasks = [
            (lambda chunk=chunk: check_reflection(S, tuples=chunk, products=prods))
            for chunk in _chunks(all_tuples, jobs * 4)
        ]
        reports.extend(_run_tasks(tasks, jobs))
        reports.extend(check_symmetry(S))
    return sort_reports(reports)


def suite_tensor(spec: AlgebraSpec, K: int, c, jobs: int, perturb: bool):
    if spec.family == "A":
        raise ResourceLimit("the tensor-model suite applies to the B/C/D families")
    from itertools import product

    phi = build_phi_tensor(spec, K, c, kappa_offset=1 if perturb else 0)
    all_tuples = list(product(spec.index_set(), repeat=4))
    prods = _PairProducts(phi)
    tasks = [
        (lambda chunk=chunk: check_reflection(phi, tuples=chunk, products=prods))
        for chunk in _chunks(all_tuples, jobs * 4)
    ]
    reports = _run_tasks(tasks, jobs)
    reports.extend(check_symmetry(phi))
    return sort_reports(reports)


def suite_projection(spec: AlgebraSpec, K: int, c, jobs: int, perturb: bool):
    return check_projection_coherence(spec, K, c, perturb=1 if perturb else 0)


def suite_centralizer(spec: AlgebraSpec, K: int, c, m: int, jobs: int):
    M = build_T_phi(spec, K, c) if spec.family == "A" else build_Sigma(spec, K, c)
    return check_centralizer_images(M, m)


def suite_qdet(spec: AlgebraSpec, K: int, c, jobs: int):
    if spec.family != "A":
        raise ResourceLimit("the quantum determinant suite applies to the gl family")
    reports = []
    for tag, M in (("eta", build_T_eta(spec, K)), ("phi", build_T_phi(spec, K, c))):
        series = qdet(M)
        for k in range(1, K + 1):
            coeff = series[k]
            if not isinstance(coeff, UEAElement):
                coeff = UEAElement.scalar(M.alphabet, coeff)
            central = all(
                commutator(coeff, UEAElement.generator(M.alphabet, i, j)).is_zero
                for i in spec.index_set()
                for j in spec.index_set()
            )
            reports.append(
                CheckReport(f"qdet-central-{tag}", f"order={k}", central,
                            None if central else "coefficient is not central")
            )
            image = hc_omega(coeff)
            sym = wprime_invariance_check(image, spec, spec.rank)
            reports.append(
                CheckReport(f"qdet-hc-symmetric-{tag}", f"order={k}", sym,
                            None if sym else f"image not shifted-symmetric: {image}")
            )
    return sort_reports(reports)


def suite_linear(spec: AlgebraSpec, K: int, c, jobs: int):
    M = build_T_eta(spec, K) if spec.family == "A" else build_S_eta(spec, K)
    return check_linear_commutators(M)


def suite_symfun(spec: AlgebraSpec, K: int, c, jobs: int):
    reports = []
    order = min(K, 6)
    family_a = spec.family == "A"
    n = max(spec.rank, 1)

    def gen(kind, m):
        if family_a:
            return generators_A(kind, m, n, c)
        return generators_BCD(kind, m, n, spec, c)

    # Newton interrelations among p/e/h up to the requested order
    for mdeg in range(1, order + 1):
        e = [gen("e", t) for t in range(1, mdeg + 1)]
        h = [gen("h", t) for t in range(1, mdeg + 1)]
        p = [gen("p", t) for t in range(1, mdeg + 1)]
        acc = (e[mdeg - 1] if mdeg % 2 == 0 else -e[mdeg - 1]) + (
            h[mdeg - 1] if True else 0
        )
        # sum_{r} (-1)^r e_r h_{m-r} = 0
        conv = h[mdeg - 1] + (e[mdeg - 1] if mdeg % 2 == 0 else -e[mdeg - 1])
        for r in range(1, mdeg):
            term = e[r - 1] * h[mdeg - r - 1]
            conv = conv + (term if r % 2 == 0 else -term)
        ok = conv.is_zero
        reports.append(CheckReport("newton-eh", f"degree={mdeg}", ok,
                                   None if ok else repr(conv)))
        ne = p[mdeg - 1] if mdeg % 2 == 1 else -p[mdeg - 1]
        for r in range(1, mdeg):
            term = p[r - 1] * e[mdeg - r - 1]
            ne = ne + (term if r % 2 == 1 else -term)
        ok = ne == e[mdeg - 1].scale(mdeg)
        reports.append(CheckReport("newton-pe", f"degree={mdeg}", ok,
                                   None if ok else repr(ne - e[mdeg - 1].scale(mdeg))))
        nh = p[mdeg - 1]
        for r in range(1, mdeg):
            nh = nh + p[r - 1] * h[mdeg - r - 1]
        ok = nh == h[mdeg - 1].scale(mdeg)
        reports.append(CheckReport("newton-ph", f"degree={mdeg}", ok,
                                   None if ok else repr(nh - h[mdeg - 1].scale(mdeg))))

    # coherence of the p-family under the rank-lowering substitution
    for m in range(1, order + 1):
        if family_a:
            hi = generators_A("p", m, n, c)
            lo = generators_A("p", m, n - 1, c)
        else:
            hi = generators_BCD("p", m, n, spec, c)
            lo = generators_BCD("p", m, n - 1, spec, c)
        ok = project_pi(hi, n, c) == lo
        reports.append(CheckReport("p-coherence", f"m={m},n={n}", ok, None))

    if not family_a:
        for rank in range(1, spec.rank + 1):
            hi = chi_series(spec, K, c, n=rank)
            lo = chi_series(spec, K, c, n=rank - 1)
            subbed = hi.map_coeffs(lambda q: q.substitute({f"lam{rank}": c}) if isinstance(q, MultiPoly) else q)
            ok = subbed == lo
            reports.append(CheckReport("chi-substitution", f"n={rank}", ok, None))
    return sort_reports(reports)


def suite_invariants(spec: AlgebraSpec, K: int, m: int, jobs: int):
    reports = []
    for M in range(1, K + 1):
        if spec.family != "A" and M % 2 == 1:
            continue
        ok = stability_check(spec, "trace", M)
        reports.append(CheckReport("stability-trace", f"M={M}", ok, None))
    small = [i for i in spec.index_set() if abs(i) <= m]
    for M in range(1, min(K, 2) + 1):
        for i in small:
            for j in small:
                if parity_status(spec, i, j, M) != "allowed":
                    continue
                ok = stability_check(spec, "corner", M, (i, j))
                reports.append(CheckReport("stability-corner", f"i={i},j={j},M={M}", ok, None))
    if spec.family != "A":
        for M in (1, 2):
            for i in small:
                for j in small:
                    status = parity_status(spec, i, j, M)
                    if status == "allowed":
                        continue
                    ok = parity_identity_holds(spec, i, j, M)
                    reports.append(
                        CheckReport("parity", f"i={i},j={j},M={M},{status}", ok, None)
                    )
    _, _, rank, expected = independence_report(spec, m, min(K, 2))
    reports.append(
        CheckReport("witness-jacobian", f"m={m},K={min(K, 2)},rank={rank}/{expected}",
                    rank == expected, None)
    )
    return sort_reports(reports)


SUITES = {
    "lie": lambda spec, K, c, m, jobs, perturb: check_lie_axioms(spec),
    "relations": lambda spec, K, c, m, jobs, perturb: suite_relations(spec, K, c, jobs, perturb),
    "tensor": lambda spec, K, c, m, jobs, perturb: suite_tensor(spec, K, c, jobs, perturb),
    "projection": lambda spec, K, c, m, jobs, perturb: suite_projection(spec, K, c, jobs, perturb),
    "centralizer": lambda spec, K, c, m, jobs, perturb: suite_centralizer(spec, K, c, m, jobs),
    "qdet": lambda spec, K, c, m, jobs, perturb: suite_qdet(spec, K, c, jobs),
    "linear": lambda spec, K, c, m, jobs, perturb: suite_linear(spec, K, c, jobs),
    "symfun": lambda spec, K, c, m, jobs, perturb: suite_symfun(spec, K, c, jobs),
    "invariants": lambda spec, K, c, m, jobs, perturb: suite_invariants(spec, K, m, jobs),
}


# -- reporting ---------------------------------------------------------------


def emit_report(reports, fmt: str, spec: AlgebraSpec, K: int, m: int, c_text: str) -> bytes:
    reports = sort_reports(reports)
    if fmt == "json":
        payload = {
            "version": VERSION,
            "spec": spec.to_string(),
            "params": {"n": spec.rank, "m": m, "K": K, "c": c_text},
            "checks": [],
        }
        for r in reports:
            entry = {"name": r.name, "instance": r.instance, "pass": r.passed}
            if r.witness is not None:
                entry["witness"] = r.witness
            payload["checks"].append(entry)
        return (json.dumps(payload, indent=2) + "\n").encode()
    lines = []
    for r in reports:
        status = "PASS" if r.passed else "FAIL"
        suffix = f"  [{r.witness}]" if r.witness else ""
        lines.append(f"{status} {r.name} {r.instance}{suffix}")
    failed = sum(1 for r in reports if not r.passed)
    lines.append(f"{len(reports) - failed}/{len(reports)} checks passed")
    return ("\n".join(lines) + "\n").encode()


# -- argument plumbing ---------------------------------------------------------


def _load_config(path: str) -> dict:
    out = {}
    with open(path, "r", encoding="utf-8") as fh:
        for raw in fh:
            line = raw.strip()
            if not line or line.startswith("#"):
                continue
            if "=" not in line:
                raise ValueError(f"bad config line (expected key=value): {line!r}")
            key, _, value = line.partition("=")
            out[key.strip()] = value.strip()
    return out


def _weight_from_text(text: str, n: int):
    """Parse "c=<rational|sym>; dev=[i:value,...]" into a rank-n weight."""
    c_part, _, dev_part = text.partition(";")
    key, _, val = c_part.strip().partition("=")
    if key.strip() != "c":
        raise ValueError("weight must start with c=<rational|sym>")
    cval, _ = _parse_c(val.strip())
    devs = {}
    dev_part = dev_part.strip()
    if dev_part:
        key, _, val = dev_part.partition("=")
        if key.strip() != "dev":
            raise ValueError("second weight field must be dev=[i:value,...]")
        val = val.strip()
        if not (val.startswith("[") and val.endswith("]")):
            raise ValueError("dev expects [i:value,...]")
        body = val[1:-1].strip()
        if body:
            for piece in body.split(","):
                idx_text, _, num = piece.partition(":")
                devs[int(idx_text)] = Fraction(num)
    weight = []
    for i in range(1, n + 1):
        w = cval + devs[i] if i in devs else cval
        weight.append(w)
    return weight


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="yangcheck",
        description="Exact verification of Yangian-type identities on evaluation images",
    )
    parser.add_argument("--config", help="key=value file supplying flag defaults")
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p, need_m=False):
        p.add_argument("--spec", required=True, help='algebra, e.g. "gl:2", "o:5", "sp:4"')
        p.add_argument("--order", "-K", type=int, default=3, help="series truncation order")
        p.add_argument("--c", default="sym", help='stability parameter: "sym" or a rational')
        p.add_argument("--m", type=int, default=0 if not need_m else 1,
                       help="small-subalgebra cutoff")
        p.add_argument("--format", choices=("json", "text"), default="json")
        p.add_argument("--jobs", type=int, default=None, help="worker threads (YANGCHECK_JOBS)")
        p.add_argument("--perturb", action="store_true",
                       help="inject the suite's perturbation control (expected to fail)")

    p = sub.add_parser("check-relations", help="exchange/reflection/symmetry residuals")
    common(p)
    p.add_argument("--suite", choices=sorted(SUITES), default=None,
                   help="override the family-default suite")

    p = sub.add_parser("check-projection", help="rank-lowering coherence of the towers")
    common(p)

    p = sub.add_parser("qdet", help="quantum determinant: coefficients and verification")
    common(p)
    p.add_argument("--verify", action="store_true", help="run centrality/symmetry checks")

    p = sub.add_parser("hc-image", help="Harish-Chandra image of an expression")
    common(p)
    p.add_argument("--expr", required=True)

    p = sub.add_parser("eigenvalue", help="highest-weight eigenvalue of an expression")
    common(p)
    p.add_argument("--expr", required=True)
    p.add_argument("--weight", required=True, help='"c=<rational|sym>; dev=[i:value,...]"')

    p = sub.add_parser("symfun", help="shifted symmetric function layer")
    common(p)
    p.add_argument("--kind", choices=("p", "e", "h"), default=None,
                   help="emit one generator instead of running the suite")
    p.add_argument("--index", type=int, default=1, help="generator index m")

    p = sub.add_parser("invariants", help="graded invariants: stability/witness/parity")
    common(p, need_m=True)

    p = sub.add_parser("normal-form", help="PBW normal form of an expression")
    common(p)
    p.add_argument("--expr", required=True)
    p.add_argument("--letter-order", choices=("hc", "ideal", "ideal-right"), default="hc")
    return parser


def main(argv=None) -> int:
    argv = list(sys.argv[1:] if argv is None else argv)
    # pre-scan for --config so its values become defaults
    parser = build_parser()
    config_path = None
    for k, item in enumerate(argv):
        if item == "--config" and k + 1 < len(argv):
            config_path = argv[k + 1]
        elif item.startswith("--config="):
            config_path = item.split("=", 1)[1]
    if config_path:
        try:
            conf = _load_config(config_path)
        except (OSError, ValueError) as exc:
            print(f"error: {exc}", file=sys.stderr)
            return 2
        known = {"spec", "order", "c", "m", "format", "jobs", "suite", "perturb"}
        extra = []
        for key, value in conf.items():
            if key not in known:
                print(f"error: unknown config key {key!r}", file=sys.stderr)
                return 2
            if key == "perturb":
                if value.lower() in ("1", "true", "yes"):
                    extra.append("--perturb")
                continue
            extra.extend([f"--{key}", value])
        # config defaults go before explicit flags so the latter win
        head, tail = argv[:1], argv[1:]
        argv = head + extra + tail
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return 2 if exc.code not in (0, None) else 0

    try:
        spec = AlgebraSpec.from_string(args.spec)
        c_poly, c_text = _parse_c(args.c)
        K = args.order
        _guard(spec, K)
        jobs = args.jobs
        if jobs is None:
            jobs = int(os.environ.get("YANGCHECK_JOBS", "1"))
        m = args.m

        if args.command == "check-relations":
            suite = args.suite or ("relations" if spec.family == "A" else "relations")
            reports = SUITES[suite](spec, K, c_poly, m, jobs, args.perturb)
            sys.stdout.buffer.write(emit_report(reports, args.format, spec, K, m, c_text))
            return 0 if all(r.passed for r in reports) else 1

        if args.command == "check-projection":
            reports = suite_projection(spec, K, c_poly, jobs, args.perturb)
            sys.stdout.buffer.write(emit_report(reports, args.format, spec, K, m, c_text))
            return 0 if all(r.passed for r in reports) else 1

        if args.command == "qdet":
            if args.verify:
                reports = suite_qdet(spec, K, c_poly, jobs)
                sys.stdout.buffer.write(emit_report(reports, args.format, spec, K, m, c_text))
                return 0 if all(r.passed for r in reports) else 1
            series = qdet(build_T_phi(spec, K, c_poly))
            for k in range(K + 1):
                print(f"u^-{k}: {series[k]}")
            return 0

        if args.command == "hc-image":
            alph = hc_order(spec)
            element = to_element(parse_expr(args.expr), alph)
            print(hc_omega(element))
            return 0

        if args.command == "eigenvalue":
            alph = hc_order(spec)
            element = to_element(parse_expr(args.expr), alph)
            weight = _weight_from_text(args.weight, spec.rank)
            print(highest_weight_eigenvalue(element, weight))
            return 0

        if args.command == "symfun":
            if args.kind:
                if spec.family == "A":
                    print(generators_A(args.kind, args.index, spec.rank, c_poly))
                else:
                    print(generators_BCD(args.kind, args.index, spec.rank, spec, c_poly))
                return 0
            reports = suite_symfun(spec, K, c_poly, jobs)
            sys.stdout.buffer.write(emit_report(reports, args.format, spec, K, m, c_text))
            return 0 if all(r.passed for r in reports) else 1

        if args.command == "invariants":
            if not check_generation_bound(spec, m, K):
                print(
                    f"warning: degree {K} >= n - m = {spec.rank - m}; the trace/corner "
                    "families are only proved to generate below that degree",
                    file=sys.stderr,
                )
            reports = suite_invariants(spec, K, m, jobs)
            sys.stdout.buffer.write(emit_report(reports, args.format, spec, K, m, c_text))
            return 0 if all(r.passed for r in reports) else 1

        if args.command == "normal-form":
            kind = {"hc": "hc", "ideal": "left", "ideal-right": "right"}[args.letter_order]
            alph = hc_order(spec) if kind == "hc" else ideal_order(spec, c_poly, kind)
            ast = parse_expr(args.expr)
            element = to_element(ast, alph)
            print(f"input:  {print_expr(ast)}")
            print(f"normal: {element}")
            return 0
    except ExprError as exc:
        print(f"syntax error: {exc}", file=sys.stderr)
        return 2
    except ResourceLimit as exc:
        print(f"resource limit: {exc}", file=sys.stderr)
        return 2
    except (ValueError, ZeroDivisionError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    return 2


if __name__ == "__main__":
    raise SystemExit(main())
