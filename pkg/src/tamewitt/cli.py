"""Command-line entry point: ``tamewitt <subcommand> ...``.

JSON results go to stdout and a short summary to stderr.  Exit codes: 0 on
success, 2 on invalid input, 3 when the working precision is exhausted.
"""

from __future__ import annotations

import argparse
import os
import sys
from dataclasses import dataclass

from . import serialize as ser
from .errors import InputError, PrecisionExhausted, TameWittError

EXIT_OK, EXIT_INPUT, EXIT_PRECISION = 0, 2, 3


@dataclass(frozen=True)
class RunConfig:
    command: str
    precision: int
    seed: int = 0

    def __post_init__(self):
        if self.precision < 8:
            raise InputError("precision must be at least 8")


class _Parser(argparse.ArgumentParser):
    def error(self, message):  # unknown subcommands and bad flags exit with code 2
        self.print_usage(sys.stderr)
        print(f"{self.prog}: error: {message}", file=sys.stderr)
        raise SystemExit(EXIT_INPUT) from InputError(message)


def _default_precision() -> int:
    raw = os.environ.get("TAMEWITT_PRECISION", "32")
    try:
        return int(raw)
    except ValueError:
        raise InputError(f"TAMEWITT_PRECISION must be an integer, got {raw!r}") from None


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="tamewitt", description="Witt groups, transfers and endo-parameters over tame p-adic fields.")
    p.add_argument("--precision", type=int, default=None, help="working precision in uniformizer digits (>= 8)")
    p.add_argument("--seed", type=int, default=0)
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def case_args(sp, cases=("orthogonal", "symplectic", "unitary")):
        sp.add_argument("--case", choices=cases, required=True)
        sp.add_argument("--field", required=True, help="field descriptor JSON (or @file)")
        sp.add_argument("--sigma", help='involution JSON {"frob": j, "mult": r} (unitary case)')
        sp.add_argument("--eps", type=int, choices=(1, -1), default=1)

    sp = sub.add_parser("classify", help="invariants and Witt class of a form")
    case_args(sp)
    sp.add_argument("--form", required=True, help='{"diag": [...]} or {"gram": [[...]]}')

    sp = sub.add_parser("witt", help="enumerate a Witt group")
    case_args(sp)
    sp.add_argument("--list", action="store_true", help="list every class (the default)")

    sp = sub.add_parser("transfer", help="transfer a form along the standard linear form of beta")
    sp.add_argument("--field", required=True, help="field E (a tower over F)")
    sp.add_argument("--base-steps", type=int, default=0, help="number of tower steps forming F")
    sp.add_argument("--beta", required=True)
    sp.add_argument("--sigma", help="involution of E (default: first one making beta skew)")
    sp.add_argument("--sigma-base", help="involution of F (default: identity)")
    sp.add_argument("--eps", type=int, choices=(1, -1), default=1)
    sp.add_argument("--form", required=True, help='form over E, {"diag": [...]} or {"entries": [...]}')

    sp = sub.add_parser("match", help="matching bijection between two Witt groups")
    for tag in ("", "2"):
        sp.add_argument(f"--field{tag}", required=True)
        sp.add_argument(f"--beta{tag}", required=True)
        sp.add_argument(f"--sigma{tag}")
    sp.add_argument("--base-steps", type=int, default=0)
    sp.add_argument("--sigma-base")
    sp.add_argument("--eps", type=int, choices=(1, -1), default=1)
    sp.add_argument("--lenient", action="store_true", help="skip the similar-descriptions check")

    sp = sub.add_parser("lattice", help="filtration bounds, duals, self-duality and doubling")
    sp.add_argument("--lattice", required=True, help='{"e": int, "mu": [[...]]}')
    sp.add_argument("--form", help='monomial form {"perm": [...], "alpha": [...]} or {"alpha": [...]}')
    sp.add_argument("--an", type=int, action="append", default=[], help="print a_n bounds (repeatable)")
    sp.add_argument("--dagger", action="store_true")

    sp = sub.add_parser("enumerate", help="enumerate endo-parameters")
    sp.add_argument("--case", choices=("gl", "orthogonal", "symplectic", "unitary"), required=True)
    sp.add_argument("--catalog", required=True, help="catalog JSON (or @file, or a path)")
    sp.add_argument("--dim", type=int, required=True)
    sp.add_argument("--field", help="base field (classical cases)")
    sp.add_argument("--sigma")
    sp.add_argument("--eps", type=int, choices=(1, -1), default=1)
    sp.add_argument("--target", help="Witt class of the ambient form (default: hyperbolic)")

    sp = sub.add_parser("selftest", help="run the oracle-versus-closed-form acceptance checks")
    sp.add_argument("--quick", action="store_true", help="smaller samples")
    return p


def _field(text, cfg: RunConfig):
    return ser.field_from_json(text, cfg.precision)


def _case(args, cfg):
    F = _field(args.field, cfg)
    sigma = ser.involution_from_json(args.sigma, F) if args.sigma else None
    return ser.case_from_args(args.case, F, sigma, args.eps)


def cmd_classify(args, cfg):
    from .forms import invariants, witt_class

    case = _case(args, cfg)
    form = ser.form_from_json(args.form, case)
    inv = invariants(form)
    wc = witt_class(form)
    out = {"case": case.to_json(), "invariants": inv.to_json(), "witt_class": wc.to_json(), "diman": wc.diman}
    return out, f"{case.kind} form of dim {inv.dim}: diman {wc.diman}"


def cmd_witt(args, cfg):
    from .forms import enumerate_witt_group

    case = _case(args, cfg)
    classes = enumerate_witt_group(case)
    out = {"case": case.to_json(), "order": len(classes), "classes": [c.to_json() for c in classes]}
    return out, f"{case.kind} Witt group of order {len(classes)}"


def _extension(field_text, beta_text, sigma_text, base_steps, sigma_base_text, cfg):
    from .padic import Involution
    from .transfer import SelfDualExtension

    E = _field(field_text, cfg)
    if not 0 <= base_steps <= len(E.tower):
        raise InputError("base-steps exceeds the tower length")
    F = E.prefix(base_steps)
    sigma_F = ser.involution_from_json(sigma_base_text, F) if sigma_base_text else Involution.identity(F)
    beta = ser.element_from_json(beta_text, E)
    if sigma_text:
        sigma_E = ser.involution_from_json(sigma_text, E)
    elif E == F:
        sigma_E = sigma_F
    else:
        sigma_E = ser.default_involution(E, beta, sigma_F)
    return SelfDualExtension(E, sigma_E, F, sigma_F, beta)


def cmd_transfer(args, cfg):
    from .forms import invariants, witt_class
    from .transfer import standard_linear_form, transfer_form, transfer_gram

    ext = _extension(args.field, args.beta, args.sigma, args.base_steps, args.sigma_base, cfg)
    case_E = ext.case_E(args.eps)
    form = ser.form_from_json(args.form, case_E)
    lam = standard_linear_form(ext)
    gram = transfer_gram(form, lam)
    diag = transfer_form(form, lam)
    inv = invariants(diag)
    wc = witt_class(diag)
    out = {
        "extension": ext.to_json(),
        "gram": [[x.to_json() for x in row] for row in gram],
        "invariants": inv.to_json(),
        "witt_class": wc.to_json(),
    }
    return out, f"transfer to {ext.case_F(args.eps).kind}: dim {inv.dim}, diman {wc.diman}"


def cmd_match(args, cfg):
    from .wittmatch import class_label, matching_map

    e1 = _extension(args.field, args.beta, args.sigma, args.base_steps, args.sigma_base, cfg)
    e2 = _extension(args.field2, args.beta2, args.sigma2, args.base_steps, args.sigma_base, cfg)
    w = matching_map(e1, e2, args.eps, strict=not args.lenient)
    table = [{"from": a.to_json(), "to": b.to_json(), "label": class_label(a, e1)} for a, b in w.items()]
    return {"eps": args.eps, "map": table}, f"matching map on {len(table)} classes"


def cmd_lattice(args, cfg):
    from .lattice import LatticeSequence, MonomialForm, a_n, dagger, is_regular, is_self_dual

    L = LatticeSequence.from_json(ser.loads(args.lattice, "lattice"))
    out: dict = {"lattice": L.to_json(), "regular": is_regular(L), "quotient_dims": L.quotient_dims()}
    for n in args.an:
        out.setdefault("a_n", {})[str(n)] = a_n(L, n)
    if args.form:
        h = MonomialForm.from_json(ser.loads(args.form, "form"))
        out["self_dual_witness"] = is_self_dual(L, h)
        if args.dagger:
            D, hd = dagger(L, h)
            out["dagger"] = {"lattice": D.to_json(), "form": hd.to_json(), "regular": is_regular(D), "self_dual_witness": is_self_dual(D, hd)}
    elif args.dagger:
        raise InputError("--dagger needs --form")
    return out, f"lattice sequence of dim {L.dim}, period {L.e}"


def cmd_enumerate(args, cfg):
    from . import endo
    from .forms import zero_class

    text = args.catalog
    if not text.startswith(("{", "@")) and os.path.exists(text):
        text = "@" + text
    if args.case == "gl":
        catalog = ser.catalog_from_json(text, None)
        params = endo.enumerate_gl(catalog, args.dim)
    else:
        if not args.field:
            raise InputError("classical enumeration needs --field")
        F = _field(args.field, cfg)
        sigma = ser.involution_from_json(args.sigma, F) if args.sigma else None
        case = ser.case_from_args(args.case, F, sigma, args.eps)
        catalog = ser.catalog_from_json(text, case)
        target = ser.witt_class_from_json(args.target, case) if args.target else zero_class(case)
        params = endo.enumerate_classical(catalog, args.dim, target)
    out = {"count": len(params), "parameters": [p.to_json() for p in params]}
    return out, f"{len(params)} {args.case} endo-parameters of dimension {args.dim}"


def cmd_selftest(args, cfg):
    from .acceptance import run_all

    rows = run_all(quick=args.quick, seed=cfg.seed)
    out = {"passed": all(r.passed for r in rows), "checks": [r.to_json() for r in rows]}
    lines = [f"{'PASS' if r.passed else 'FAIL'} {r.name}: {r.detail} ({r.seconds:.1f}s)" for r in rows]
    return out, "\n".join(lines)


COMMANDS = {
    "classify": cmd_classify,
    "witt": cmd_witt,
    "transfer": cmd_transfer,
    "match": cmd_match,
    "lattice": cmd_lattice,
    "enumerate": cmd_enumerate,
    "selftest": cmd_selftest,
}


def run(argv=None, stdout=None, stderr=None) -> int:
    stdout = stdout or sys.stdout
    stderr = stderr or sys.stderr
    try:
        args = build_parser().parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        precision = args.precision if args.precision is not None else _default_precision()
        cfg = RunConfig(args.command, precision, args.seed)
        result, summary = COMMANDS[args.command](args, cfg)
    except PrecisionExhausted as exc:
        print(f"error: precision exhausted: {exc}", file=stderr)
        return EXIT_PRECISION
    except (TameWittError, ValueError, KeyError, TypeError, OSError) as exc:
        print(f"error: {exc}", file=stderr)
        return EXIT_INPUT
    print(ser.dumps(result), file=stdout)
    print(summary, file=stderr)
    if args.command == "selftest" and not result["passed"]:
        return 1
    return EXIT_OK


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
