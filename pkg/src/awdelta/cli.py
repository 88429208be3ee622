"""Command line front end: ``aw <command> [options]``.

Every command prints one JSON document.  Exit status is 0 on success, 1 when
a verification fails and 2 on usage errors or violated preconditions.
"""

import argparse
import cmath
import json
import random
import re
import sys

from .awpoly import AWContext, aw_operator_check, aw_poly, recurrence_coeffs
from .classify import irreducibility_report, isomorphic, random_conjugation, recognize
from .deltamod import (
    GROUP24,
    DeltaRep,
    GroupElem24,
    ModuleParams,
    change_basis24,
    check_relations,
    expected_forms,
    orbit_key,
    verma_truncation,
    vn_module,
)
from .errors import AWError, OutsideFieldError, VerificationError
from .leonard import leonard_check, unitary_check_float
from .qgroups import (
    cg_decompose,
    coproduct,
    equitable_rotator,
    racah,
    realize_uq,
    so3_check,
    standard_module,
)
from .scalar import format_scalar, parse_scalar
from .suite import CRITERIA, run_suite

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def _scalar(text):
    try:
        return parse_scalar(text)
    except (ValueError, AWError) as exc:
        raise argparse.ArgumentTypeError(f"bad scalar {text!r}: {exc}") from None


_EXP = re.compile(r"^exp\((.+)\)$")


def _float_scalar(text):
    """A complex number, or ``exp(t)`` for the unit complex number at angle ``t``."""
    m = _EXP.match(text.replace(" ", ""))
    try:
        if m:
            return cmath.exp(1j * float(m.group(1)))
        return complex(text.replace("i", "j"))
    except ValueError:
        raise argparse.ArgumentTypeError(f"bad complex number {text!r}") from None


def _module_opts(p, lam=False, required=True):
    p.add_argument("--n", type=int, required=required)
    for name in "qabc":
        p.add_argument(f"--{name}", type=_scalar, required=required)
    if lam:
        p.add_argument("--lambda", dest="lam", type=_scalar, default=None)


def _params(ns):
    return ModuleParams(ns.n, ns.q, ns.a, ns.b, ns.c, getattr(ns, "lam", None))


def _fmt(x):
    return format_scalar(x)


# -- commands ---------------------------------------------------------------


def cmd_build(ns):
    return vn_module(_params(ns)).to_json(), True


def cmd_verma(ns):
    return verma_truncation(_params(ns), ns.depth).to_json(), True


def cmd_verify(ns):
    params = _params(ns)
    if ns.depth is not None:
        rep = verma_truncation(params, ns.depth)
    else:
        rep = vn_module(params)
    report = check_relations(rep)
    return report.to_json(), report.ok


def cmd_irreducible(ns):
    report = irreducibility_report(_params(ns))
    return report, report["criterion"] == report["oracle"]


def cmd_classify(ns):
    if ns.rep is not None:
        with open(ns.rep) as fh:
            rep = DeltaRep.from_json(json.load(fh))
        return recognize(rep).to_json(), True
    missing = [f"--{k}" for k in ("n", "q", "a", "b", "c") if getattr(ns, k) is None]
    if missing:
        raise UsageError("classify needs --rep or " + ", ".join(missing))
    params = _params(ns)
    rep = vn_module(params)
    conj, P = random_conjugation(rep, random.Random(ns.seed))
    res = recognize(conj)
    out = res.to_json()
    out["conjugator"] = P.to_json()
    out["expected_orbit"] = [_fmt(x) for x in orbit_key(*params.abc)]
    return out, res.orbit == orbit_key(*params.abc)


def _triple(text):
    parts = [s.strip() for s in text.split(",")]
    if len(parts) != 3:
        raise argparse.ArgumentTypeError("expected three comma separated scalars")
    return tuple(_scalar(s) for s in parts)


def cmd_iso(ns):
    p1 = _params(ns)
    p2 = p1.with_abc(*ns.other)
    M = isomorphic(vn_module(p1), vn_module(p2))
    out = {
        "first": p1.to_json(),
        "second": p2.to_json(),
        "isomorphic": M is not None,
        "same_orbit": orbit_key(*p1.abc) == orbit_key(*p2.abc),
        "intertwiner": None if M is None else M.to_json(),
    }
    return out, out["isomorphic"] == out["same_orbit"]


def cmd_bases(ns):
    params = _params(ns)
    elements = GROUP24 if ns.element is None else (GroupElem24.parse(ns.element),)
    rows = []
    ok = True
    for g in elements:
        P, mats, target = change_basis24(params, g)
        match = g.permute(mats) == expected_forms(params.n, target)
        ok = ok and match
        row = {
            "element": g.to_json(),
            "word": list(g.word()),
            "target": [_fmt(x) for x in target],
            "matches": match,
        }
        if ns.element is not None:
            row["transition"] = P.to_json()
        rows.append(row)
    return {"module": params.to_json(), "bases": rows}, ok


def cmd_awpoly(ns):
    ctx = AWContext(ns.lam, ns.q, ns.a, ns.b, ns.c)
    ctx.check_generic(ns.i + 1)
    p = aw_poly(ns.i, ctx)
    a_i, b_i, c_i = recurrence_coeffs(ns.i, ctx)
    out = {
        "i": ns.i,
        "poly": p.to_json(),
        "recurrence": {"a": _fmt(a_i), "b": _fmt(b_i), "c": _fmt(c_i)},
    }
    ok = True
    if ns.check:
        ok = aw_operator_check(ns.i, ctx, poly=p)
        out["operator_check"] = ok
    return out, ok


def cmd_leonard(ns):
    report = leonard_check(_params(ns), ns.direct)
    out = report.to_json()
    if not ns.witness:
        out.pop("witnesses", None)
    return out, report.agrees and report.consistent


def cmd_unitary(ns):
    out = unitary_check_float(ns.n, ns.q, ns.a, ns.b, ns.c, ns.tol)
    return out, out["ok"]


def cmd_uq_standard(ns):
    rep = standard_module(ns.n, ns.eps, ns.q)
    t = rep.equitable()
    L = equitable_rotator(rep)
    cas = rep.casimir()
    out = rep.to_json()
    out.update(
        x=t.x.to_json(),
        y=t.y.to_json(),
        z=t.z.to_json(),
        casimir=_fmt(cas.scalar_value()) if cas.scalar_value() is not None else cas.to_json(),
        rotator=L.to_json(),
        relations_ok=rep.relations_ok(),
    )
    return out, out["relations_ok"]


def cmd_uq_realize(ns):
    params = _params(ns)
    real = realize_uq(params, ns.eps)
    out = {"module": params.to_json(), "type": ns.eps, "found": real is not None}
    if real is not None:
        out["realization"] = real.to_json()
    return out, True


def _family(text):
    if text == "nonclassical":
        return text
    try:
        signs = tuple(int(s) for s in text.split(","))
    except ValueError:
        raise argparse.ArgumentTypeError("family is 'nonclassical' or three signs like 1,-1,-1") from None
    if len(signs) != 3:
        raise argparse.ArgumentTypeError("classical family needs three signs")
    return signs


def cmd_uq_so3(ns):
    out = so3_check(ns.n, ns.q, ns.family)
    return out, out["ok"]


def cmd_cg(ns):
    rep = coproduct(standard_module(ns.m, ns.eps1, ns.q), standard_module(ns.n, ns.eps2, ns.q))
    res = cg_decompose(rep)
    out = res.to_json()
    out["multiset"] = [
        {"n": n, "type": e, "multiplicity": k} for (n, e), k in sorted(res.multiset().items(), reverse=True)
    ]
    return out, True


def cmd_racah(ns):
    data = racah(ns.m, ns.n, ns.p, ns.q)
    out = data.to_json()
    return out, data.relations.central and data.tridiagonal_ok


def _selection(text):
    try:
        picks = sorted({int(s) for s in text.split(",")})
    except ValueError:
        raise argparse.ArgumentTypeError("expected criterion numbers like 1,3,10") from None
    if any(k not in CRITERIA for k in picks):
        raise argparse.ArgumentTypeError(f"criteria are numbered 1..{len(CRITERIA)}")
    return picks


def cmd_suite(ns):
    echo = None if ns.quiet else (lambda line: print(line, file=sys.stderr))
    results = run_suite(ns.only, echo)
    return {"criteria": [r.to_json() for r in results]}, all(r.ok for r in results)


# -- parser -----------------------------------------------------------------


def build_parser():
    parser = _Parser(prog="aw", description="Exact computations with the universal Askey-Wilson algebra.")
    parser.add_argument("--json", dest="request", metavar="FILE", help="read a request document")
    parser.add_argument("--out", metavar="FILE", help="write the result here instead of stdout")
    sub = parser.add_subparsers(dest="command", parser_class=_Parser)

    p = sub.add_parser("build", help="matrices of A, B, C on V_n(a, b, c)")
    _module_opts(p)
    p.set_defaults(func=cmd_build)

    p = sub.add_parser("verma", help="truncated Verma module")
    _module_opts(p, lam=True)
    p.add_argument("--depth", type=int, default=8)
    p.set_defaults(func=cmd_verma)

    p = sub.add_parser("verify", help="check the defining relations")
    _module_opts(p, lam=True)
    p.add_argument("--depth", type=int, default=None, help="check a Verma truncation of this depth")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("irreducible", help="closed-form criterion and brute-force oracle")
    _module_opts(p)
    p.set_defaults(func=cmd_irreducible)

    p = sub.add_parser("classify", help="recognize a (randomly conjugated) module")
    _module_opts(p, required=False)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--rep", metavar="FILE", help="recognize this representation instead")
    p.set_defaults(func=cmd_classify)

    p = sub.add_parser("iso", help="isomorphism test between V_n(a, b, c) and V_n(a', b', c')")
    _module_opts(p)
    p.add_argument("--other", type=_triple, required=True, metavar="A,B,C")
    p.set_defaults(func=cmd_iso)

    p = sub.add_parser("bases", help="the 24 bases of V_n(a, b, c)")
    _module_opts(p)
    p.add_argument("--element", help="one element as 's0,s1,word', e.g. '1,-1,t'")
    p.set_defaults(func=cmd_bases)

    p = sub.add_parser("awpoly", help="Askey-Wilson polynomial p_i")
    p.add_argument("--lambda", dest="lam", type=_scalar, required=True)
    p.add_argument("--q", type=_scalar, required=True)
    p.add_argument("--a", type=_scalar, required=True)
    p.add_argument("--b", type=_scalar, required=True)
    p.add_argument("--c", type=_scalar, required=True)
    p.add_argument("--i", type=int, required=True)
    p.add_argument("--check", action="store_true", help="also test the difference operator identity")
    p.set_defaults(func=cmd_awpoly)

    p = sub.add_parser("leonard", help="Leonard pair and triple flags")
    _module_opts(p)
    p.add_argument("--direct", action="store_true", help="verify tridiagonality in eigenbases")
    p.add_argument("--witness", action="store_true", help="include the tridiagonal matrices")
    p.set_defaults(func=cmd_leonard)

    p = sub.add_parser("unitary", help="floating point unitary form check")
    p.add_argument("--n", type=int, required=True)
    for name in ("q", "a", "b", "c"):
        p.add_argument(f"--{name}", type=_float_scalar, required=True, help="complex, or exp(t)")
    p.add_argument("--tol", type=float, default=1e-9)
    p.set_defaults(func=cmd_unitary)

    p = sub.add_parser("uq", help="U_q(sl2) modules, realizations and so3")
    uq = p.add_subparsers(dest="uq_command", parser_class=_Parser)
    s = uq.add_parser("standard", help="standard module V_{n,eps}")
    s.add_argument("--n", type=int, required=True)
    s.add_argument("--eps", type=int, choices=(1, -1), default=1)
    s.add_argument("--q", type=_scalar, required=True)
    s.set_defaults(func=cmd_uq_standard)
    s = uq.add_parser("realize", help="V_n(a, b, c) as a U_q(sl2) module")
    _module_opts(s)
    s.add_argument("--eps", type=int, choices=(1, -1), default=1)
    s.set_defaults(func=cmd_uq_realize)
    s = uq.add_parser("so3", help="U'_q(so3) specialisation")
    s.add_argument("--n", type=int, required=True)
    s.add_argument("--q", type=_scalar, required=True)
    s.add_argument("--family", type=_family, default=(1, 1, 1))
    s.set_defaults(func=cmd_uq_so3)

    p = sub.add_parser("cg", help="Clebsch-Gordan decomposition of V_m (x) V_n")
    p.add_argument("--m", type=int, required=True)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--q", type=_scalar, required=True)
    p.add_argument("--eps1", type=int, choices=(1, -1), default=1)
    p.add_argument("--eps2", type=int, choices=(1, -1), default=1)
    p.set_defaults(func=cmd_cg)

    p = sub.add_parser("racah", help="images on V_m (x) V_n (x) V_p and the Racah matrix")
    p.add_argument("--m", type=int, required=True)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--p", type=int, required=True)
    p.add_argument("--q", type=_scalar, required=True)
    p.set_defaults(func=cmd_racah)

    p = sub.add_parser("suite", help="run the acceptance grid")
    p.add_argument("--only", type=_selection, default=None, metavar="1,2,...")
    p.add_argument("--quiet", action="store_true")
    p.set_defaults(func=cmd_suite)
    return parser


def _request_argv(path):
    """Translate ``{"command", "params", "options"}`` into an argument list."""
    try:
        with open(path) as fh:
            req = json.load(fh)
    except (OSError, json.JSONDecodeError) as exc:
        raise UsageError(f"cannot read request {path}: {exc}") from None
    if not isinstance(req, dict) or "command" not in req:
        raise UsageError("request needs a 'command' field")
    argv = str(req["command"]).split()
    for key, value in {**req.get("params", {}), **req.get("options", {})}.items():
        flag = "--" + key.replace("_", "-")
        if value is True:
            argv.append(flag)
        elif value is False or value is None:
            continue
        else:
            argv += [flag, str(value)]
    return argv


def _emit(doc, out):
    text = json.dumps(doc, indent=2) + "\n"
    if out:
        with open(out, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def main(argv=None):
    parser = build_parser()
    try:
        ns = parser.parse_args(argv)
        if ns.request:
            extra = _request_argv(ns.request)
            ns = parser.parse_args(extra)
            ns.out = ns.out or parser.parse_args(argv).out
        if getattr(ns, "func", None) is None:
            raise UsageError("no command given")
        doc, ok = ns.func(ns)
    except UsageError as exc:
        print(f"aw: usage error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except OutsideFieldError as exc:
        print(f"aw: {exc}; coefficients {exc.coefficients}", file=sys.stderr)
        return EXIT_USAGE
    except VerificationError as exc:
        print(f"aw: verification failed: {exc}", file=sys.stderr)
        return EXIT_FAIL
    except (AWError, ValueError, ZeroDivisionError) as exc:
        print(f"aw: {exc}", file=sys.stderr)
        return EXIT_USAGE
    _emit(doc, ns.out)
    return EXIT_OK if ok else EXIT_FAIL


if __name__ == "__main__":
    sys.exit(main())
