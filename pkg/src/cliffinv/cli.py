"""Command-line front end.

Every subcommand builds a report ``{schema, command, inputs, outputs,
checks, seed, elapsed_ms}``; ``--json`` prints it as JSON, otherwise a
short text rendering is printed.  The exit status is 0 exactly when every
check passes, 1 when some check fails and 2 on input or domain errors.
"""

from __future__ import annotations

import argparse
import json
import sys
import time
from typing import Sequence

from . import __version__
from .algwithinv import AlgebraError, IsoCertificate, classify
from .battery import CRITERIA, run_criterion
from .clifford import (CliffordElement, CliffordError, format_element, induced_involution,
                       parse_element, z_element)
from .exactfield import FieldError, FieldScalar, parse_scalar
from .linalg import LinAlgError
from .qspace import FormError, OrthSymmetry, QuadForm, signed_disc
from .structure import (REALIZE_MODES, CertChain, StructureError, clifford_model, compose_even,
                        compose_full, decompose_even, decompose_full, even_model, even_reduce,
                        predict_type, realize_quaternion, reduced_form, second_kind_realize,
                        synthesize_multiquaternion, unitary_synthesize)

REPORT_SCHEMA = "report/1"
DEFAULT_SEED = 42
DEFAULT_MAX_DIM = 8  # largest form dimension for full-algebra operations

DOMAIN_ERRORS = (FieldError, FormError, CliffordError, AlgebraError, StructureError, LinAlgError)


class CliError(ValueError):
    pass


# -- parsing ---------------------------------------------------------------

def parse_form_spec(text: str) -> QuadForm:
    """``"1,-1,2"`` -> <1, -1, 2>; errors name the character position."""
    if text is None or not text.strip():
        raise CliError("empty form specification")
    coeffs, pos = [], 0
    for token in text.split(","):
        stripped = token.strip()
        where = pos + (len(token) - len(token.lstrip()))
        try:
            value = parse_scalar(stripped)
        except FieldError:
            raise CliError(f"position {where}: cannot parse coefficient {stripped!r}") from None
        if value.is_zero():
            raise CliError(f"position {where}: zero coefficient, the form would be degenerate")
        coeffs.append(value)
        pos += len(token) + 1
    return QuadForm(tuple(coeffs), coeffs[0].field)


def parse_sym_spec(text: str, n: int) -> OrthSymmetry:
    """``"+-+"`` with n=3 -> sigma with s=1."""
    text = (text or "").strip()
    for pos, ch in enumerate(text):
        if ch not in "+-":
            raise CliError(f"position {pos}: expected '+' or '-', got {ch!r}")
    if len(text) != n:
        raise CliError(f"symmetry has length {len(text)} but the form has dimension {n}")
    return OrthSymmetry.from_text(text)


def parse_factors(text: str, with_mode: bool = True) -> list[tuple]:
    """``"a,b,mode;a,b,mode"`` (or ``"a,b;a,b"`` without modes)."""
    if not text:
        raise CliError("--factors is required")
    out = []
    for k, chunk in enumerate(text.split(";")):
        parts = [p.strip() for p in chunk.split(",")]
        want = 3 if with_mode else 2
        if len(parts) != want:
            raise CliError(f"factor {k + 1}: expected {want} comma-separated fields, got {chunk!r}")
        try:
            a, b = parse_scalar(parts[0]), parse_scalar(parts[1])
        except FieldError as exc:
            raise CliError(f"factor {k + 1}: {exc}") from None
        out.append((a, b, parts[2]) if with_mode else (a, b))
    return out


def _scalar_arg(value: str | None, name: str) -> FieldScalar:
    if value is None:
        raise CliError(f"--{name} is required")
    try:
        return parse_scalar(value)
    except FieldError as exc:
        raise CliError(f"--{name}: {exc}") from None


def _form_and_sym(args, form_key="form", sym_key="sym", default_sym="+"):
    text = getattr(args, form_key)
    if text is None:
        raise CliError(f"--{form_key.replace('_', '-')} is required")
    q = parse_form_spec(text)
    sym_text = getattr(args, sym_key)
    sigma = parse_sym_spec(sym_text if sym_text is not None else default_sym * q.n, q.n)
    return q, sigma


def _cap(n: int, args) -> None:
    if n > args.max_dim:
        raise CliError(f"form dimension {n} exceeds --max-dim {args.max_dim}")


# -- report helpers ----------------------------------------------------------

def _check(name: str, ok: bool, witness: str | None = None) -> dict:
    out = {"name": name, "status": "pass" if ok else "fail"}
    if not ok and witness:
        out["witness"] = witness
    return out


def _cert_checks(cert: IsoCertificate, prefix: str = "certificate") -> list[dict]:
    return [_check(f"{prefix}: {name}", res.passed, res.witness) for name, res in cert.checks.items()]


def _chain_checks(chain: CertChain, prefix: str = "chain") -> list[dict]:
    out = []
    for k, (desc, cert) in enumerate(chain.steps, 1):
        fails = cert.failures()
        out.append(_check(f"{prefix} step {k}: {desc}", not fails, json.dumps(fails) if fails else None))
    return out


def _classification(alg) -> dict:
    try:
        return classify(alg).to_json()
    except AlgebraError as exc:
        return {"error": str(exc)}


# -- subcommands ---------------------------------------------------------------

def cmd_mul(args):
    q = parse_form_spec(args.form)
    _cap(q.n, args)
    x, y = parse_element(args.x or "", q), parse_element(args.y or "", q)
    xy = x * y
    return ({"form": str(q), "x": format_element(x), "y": format_element(y)},
            {"product": format_element(xy)}, [])


def cmd_involve(args):
    q, sigma = _form_and_sym(args)
    _cap(q.n, args)
    x = parse_element(args.x or "", q)
    jx = induced_involution(sigma, x)
    checks = [_check("involution squares to the identity", induced_involution(sigma, jx) == x)]
    if args.y:
        y = parse_element(args.y, q)
        lhs = induced_involution(sigma, x * y)
        checks.append(_check("antimultiplicative on (x, y)", lhs == induced_involution(sigma, y) * jx))
    return ({"form": str(q), "sym": str(sigma), "x": format_element(x)},
            {"image": format_element(jx)}, checks)


def cmd_z(args):
    q, sigma = _form_and_sym(args)
    _cap(q.n, args)
    n = q.n
    z = z_element(sigma, q)
    z2 = z * z
    sign = (-1) ** sigma.s * (-1) ** (n * (n - 1) // 2)
    jz = induced_involution(sigma, z)
    checks = [
        _check("z^2 equals the signed discriminant", z2 == CliffordElement.scalar(q, signed_disc(q)),
               format_element(z2)),
        _check("J(z) = (-1)^s (-1)^(n(n-1)/2) z", jz == z * sign, format_element(jz)),
    ]
    for i in range(n):
        e = CliffordElement.generator(q, i)
        want = -(e * z) if n % 2 == 0 else e * z
        word = "anticommutes" if n % 2 == 0 else "commutes"
        checks.append(_check(f"z {word} with e{i + 1}", z * e == want))
    return ({"form": str(q), "sym": str(sigma)},
            {"z": format_element(z), "z_squared": format_element(z2),
             "signed_disc": str(signed_disc(q)), "involution_sign": sign}, checks)


def cmd_type(args):
    q, sigma = _form_and_sym(args)
    even = args.mode == "even"
    _cap(q.n, args)
    alg = even_model(q, sigma) if even else clifford_model(q, sigma)
    result = _classification(alg)
    checks = []
    predicted = None
    if not even and q.n % 2 == 0:
        predicted = predict_type(q.n, sigma.s)
    elif even and q.n % 2 == 1:
        _, s2 = reduced_form(q, sigma, 0)
        predicted = predict_type(q.n - 1, s2.s)
    if predicted is not None:
        checks.append(_check("classification matches the prediction", result.get("type") == predicted,
                             f"classified {result.get('type', result.get('error'))}, "
                             f"predicted {predicted}"))
    outputs = {"algebra": "C0" if even else "C", "dim": alg.dim, "classification": result,
               "center_dim": len(alg.center), "symmetric_dim": alg.symmetric_dim}
    if predicted is not None:
        outputs["predicted"] = predicted
    return ({"form": str(q), "sym": str(sigma), "mode": args.mode or "full"}, outputs, checks)


def cmd_predict(args):
    if args.n is None or args.s is None:
        raise CliError("--n and --s are required")
    t = predict_type(args.n, args.s)
    return ({"n": args.n, "s": args.s}, {"type": t, "trace_mod_8": (args.n - 2 * args.s) % 8}, [])


def cmd_realize(args):
    a, b = _scalar_arg(args.a, "a"), _scalar_arg(args.b, "b")
    mode = args.mode or "symplectic"
    if mode not in REALIZE_MODES:
        raise CliError(f"--mode must be one of {', '.join(REALIZE_MODES)}")
    form, sym, cert = realize_quaternion(a, b, mode)
    return ({"a": str(a), "b": str(b), "mode": mode},
            {"form": str(form), "sym": str(sym), "symmetric_dim": cert.target.symmetric_dim,
             "certificate": cert.to_json()}, _cert_checks(cert))


def _two_forms(args):
    q1, s1 = _form_and_sym(args, "form", "sym")
    if args.form2 is None:
        q2, s2 = QuadForm(()), OrthSymmetry(())
    else:
        q2, s2 = _form_and_sym(args, "form2", "sym2")
    _cap(q1.n + q2.n, args)
    return q1, s1, q2, s2


def cmd_decompose(args):
    q1, s1, q2, s2 = _two_forms(args)
    even = args.mode == "even"
    cert = (decompose_even if even else decompose_full)(q1, s1, q2, s2)
    checks = _cert_checks(cert)
    checks.append(_check("sign agrees with the discriminant of the symmetry",
                         cert.meta["sign"] == cert.meta["uniform_sign"],
                         f"{cert.meta['sign']} vs {cert.meta['uniform_sign']}"))
    forms = [str(f) for f in cert.meta["forms"]]
    syms = [str(s) for s in cert.meta["syms"]]
    return ({"form": str(q1), "sym": str(s1), "form2": str(q2), "sym2": str(s2),
             "mode": "even" if even else "full"},
            {"sign": cert.meta["sign"], "factor_forms": forms, "factor_syms": syms,
             "certificate": cert.to_json()}, checks)


def cmd_compose(args):
    q1, s1, q2, s2 = _two_forms(args)
    even = args.mode == "even"
    cert = (compose_even if even else compose_full)(q1, s1, q2, s2)
    return ({"form": str(q1), "sym": str(s1), "form2": str(q2), "sym2": str(s2),
             "mode": "even" if even else "full"},
            {"form": str(cert.meta["form"]), "sym": str(cert.meta["sym"]),
             "certificate": cert.to_json()}, _cert_checks(cert))


def cmd_even_reduce(args):
    q, sigma = _form_and_sym(args)
    _cap(q.n, args)
    pivot = (args.pivot or 1) - 1
    cert = even_reduce(q, sigma, pivot)
    return ({"form": str(q), "sym": str(sigma), "pivot": pivot + 1},
            {"form": str(cert.meta["form"]), "sym": str(cert.meta["sym"]),
             "certificate": cert.to_json()}, _cert_checks(cert))


def cmd_synth(args):
    factors = parse_factors(args.factors)
    if len(factors) > args.max_dim // 2:
        raise CliError(f"{len(factors)} factors exceed the cap of {args.max_dim // 2} "
                       f"(raise --max-dim)")
    prefer = args.mode or "plus"
    if prefer not in ("plus", "minus"):
        raise CliError("--mode must be plus or minus for synth")
    F, S, chain, info = synthesize_multiquaternion(factors, prefer=prefer)
    checks = _chain_checks(chain)
    final = _classification(chain.target)
    checks.append(_check("classification matches the tensor model",
                         final.get("type") == info["product_type"], json.dumps(final)))
    return ({"factors": [[str(a), str(b), m] for a, b, m in factors], "prefer": prefer},
            {"form": str(F), "sym": str(S), "product_type": info["product_type"],
             "shape": info["shape"], "chain": chain.to_json()}, checks)


def cmd_second_kind(args):
    a, b, c = (_scalar_arg(getattr(args, k), k) for k in "abc")
    out = second_kind_realize(a, b, c)
    checks = _chain_checks(out["chain"])
    checks.append(_check("unitary at every stage", all(s.type == "unitary" for s in out["stages"])))
    checks.append(_check("discriminant in the class of c", out["disc_matches_c"], str(out["disc"])))
    return ({"a": str(a), "b": str(b), "c": str(c)},
            {"d": str(out["d"]), "e": str(out["e"]), "form": str(out["form"]),
             "sym": str(out["sym"]), "disc": str(out["disc"]),
             "stages": [s.type for s in out["stages"]], "chain": out["chain"].to_json()}, checks)


def cmd_unitary_synth(args):
    pairs = parse_factors(args.factors, with_mode=False)
    c = _scalar_arg(args.c, "c")
    if len(pairs) > args.max_dim // 2:
        raise CliError(f"{len(pairs)} factors exceed the cap of {args.max_dim // 2} "
                       f"(raise --max-dim)")
    out = unitary_synthesize(pairs, c)
    outputs, checks = {}, []
    for clause in ("iii", "iv", "v"):
        if clause not in out:
            continue
        part = out[clause]
        checks += _chain_checks(part["chain"], f"clause ({clause})")
        checks.append(_check(f"clause ({clause}) unitary at every stage",
                             all(s.type == "unitary" for s in part["stages"])))
        outputs[clause] = {"form": str(part["form"]), "sym": str(part["sym"]),
                           "chain": part["chain"].to_json()}
        if "disc" in part:
            outputs[clause]["disc"] = str(part["disc"])
            checks.append(_check(f"clause ({clause}) discriminant is not a square",
                                 part["disc_nontrivial"], str(part["disc"])))
    return ({"factors": [[str(a), str(b)] for a, b in pairs], "c": str(c)}, outputs, checks)


def cmd_suite(args):
    seed = args.seed
    criteria, checks = [], []
    timings = {}
    for number, (title, _) in CRITERIA.items():
        start = time.perf_counter()
        result = run_criterion(number, seed)
        timings[number] = time.perf_counter() - start
        passed = sum(1 for c in result if c["status"] == "pass")
        criteria.append({"number": number, "title": title, "checks": result,
                         "passed": passed, "failed": len(result) - passed})
        checks += [dict(c, name=f"criterion {number}: {c['name']}") for c in result]
    passed = sum(1 for c in checks if c["status"] == "pass")
    outputs = {"criteria": criteria, "totals": {"passed": passed, "failed": len(checks) - passed}}
    args.timings = timings
    return ({"seed": seed}, outputs, checks)


COMMANDS = {
    "mul": (cmd_mul, "multiply two elements of C(q)"),
    "involve": (cmd_involve, "apply J^sigma to an element"),
    "z": (cmd_z, "the element z and its identities"),
    "type": (cmd_type, "classify (C(q), J^sigma) or its even part"),
    "predict": (cmd_predict, "predicted type of J^sigma from n and s"),
    "realize": (cmd_realize, "realize a quaternion algebra with involution"),
    "decompose": (cmd_decompose, "tensor decomposition certificate"),
    "compose": (cmd_compose, "inverse of the tensor decomposition"),
    "even-reduce": (cmd_even_reduce, "identify C0(q) with a smaller Clifford algebra"),
    "synth": (cmd_synth, "realize a product of quaternion algebras"),
    "second-kind": (cmd_second_kind, "realize (Q, gamma) (x) (K, conj)"),
    "unitary-synth": (cmd_unitary_synth, "realize a product of quaternions with (K, conj)"),
    "suite": (cmd_suite, "run the full acceptance battery"),
}


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="cliffinv", description=__doc__.splitlines()[0])
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", metavar="COMMAND")
    sub.required = True
    for name, (_, help_text) in COMMANDS.items():
        p = sub.add_parser(name, help=help_text)
        p.add_argument("--form", help='diagonal form, e.g. "1,-1,2"')
        p.add_argument("--form2", help="second form (decompose/compose)")
        p.add_argument("--sym", help='symmetry signs, e.g. "+-+" (default all +)')
        p.add_argument("--sym2", help="symmetry for --form2")
        p.add_argument("--n", type=int)
        p.add_argument("--s", type=int)
        p.add_argument("--pivot", type=int, help="1-based pivot generator (default 1)")
        p.add_argument("--a")
        p.add_argument("--b")
        p.add_argument("--c")
        p.add_argument("--factors", help='"a,b,mode;a,b,mode" (synth) or "a,b;a,b" (unitary-synth)')
        p.add_argument("--mode", help="operation variant (see README)")
        p.add_argument("--x", help='element such as "1 + 2 e1^e2"')
        p.add_argument("--y", help="second element")
        p.add_argument("--seed", type=int, default=DEFAULT_SEED)
        p.add_argument("--max-dim", type=int, default=DEFAULT_MAX_DIM,
                       help="largest form dimension accepted (default 8)")
        p.add_argument("--json", action="store_true", help="emit the JSON report")
        p.add_argument("--out", help="also write the JSON report to this file")
    return parser


def _jsonable(value):
    if isinstance(value, dict):
        return {k: _jsonable(v) for k, v in value.items()}
    if isinstance(value, (list, tuple)):
        return [_jsonable(v) for v in value]
    if isinstance(value, (FieldScalar, QuadForm, OrthSymmetry)):
        return str(value)
    return value


VALUE_FLAGS = ("--form", "--form2", "--sym", "--sym2", "--a", "--b", "--c", "--factors",
               "--x", "--y")


def _attach_values(argv: Sequence[str]) -> list[str]:
    """Let ``--sym -+`` or ``--a -3`` through: argparse would read them as options."""
    out, it = [], iter(argv)
    for token in it:
        if token in VALUE_FLAGS:
            value = next(it, None)
            out.append(token if value is None else f"{token}={value}")
        else:
            out.append(token)
    return out


def execute(args: argparse.Namespace) -> tuple[dict, int]:
    handler, _ = COMMANDS[args.command]
    start = time.perf_counter()
    inputs, outputs, checks = handler(args)
    report = {
        "schema": REPORT_SCHEMA,
        "command": args.command,
        "inputs": _jsonable(inputs),
        "outputs": _jsonable(outputs),
        "checks": checks,
        "seed": args.seed,
        "elapsed_ms": int((time.perf_counter() - start) * 1000),
    }
    code = 0 if all(c["status"] == "pass" for c in checks) else 1
    return report, code


def run(argv: Sequence[str] | None = None) -> tuple[dict, int]:
    """Parse ``argv`` and return (report, exit status); domain errors propagate."""
    argv = sys.argv[1:] if argv is None else argv
    return execute(build_parser().parse_args(_attach_values(argv)))


def render_text(report: dict, timings: dict | None = None) -> str:
    lines = [f"{report['command']}: " + ", ".join(f"{k}={v}" for k, v in report["inputs"].items())]
    if report["command"] == "suite":
        for crit in report["outputs"]["criteria"]:
            status = "PASS" if crit["failed"] == 0 else "FAIL"
            extra = f" ({timings[crit['number']]:.1f} s)" if timings else ""
            lines.append(f"{status} criterion {crit['number']}: {crit['title']} "
                         f"[{crit['passed']}/{crit['passed'] + crit['failed']}]{extra}")
    else:
        for key, value in report["outputs"].items():
            if isinstance(value, dict) and ("schema" in value or "map" in value):
                value = "(certificate; see --json)"
            elif isinstance(value, dict):
                value = {k: v for k, v in value.items() if k != "chain"}
            lines.append(f"  {key}: {value}")
    for c in report["checks"]:
        if c["status"] != "pass" or report["command"] != "suite":
            tail = f": {c['witness']}" if c.get("witness") else ""
            lines.append(f"  {c['status'].upper()} {c['name']}{tail}")
    total = len(report["checks"])
    ok = sum(1 for c in report["checks"] if c["status"] == "pass")
    lines.append(f"{ok}/{total} checks passed ({report['elapsed_ms']} ms)")
    return "\n".join(lines)


def main(argv: Sequence[str] | None = None) -> int:
    argv = sys.argv[1:] if argv is None else argv
    args = build_parser().parse_args(_attach_values(argv))
    try:
        report, code = execute(args)
    except (CliError, *DOMAIN_ERRORS) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    text = json.dumps(report, indent=2, sort_keys=True)
    if args.out:
        with open(args.out, "w") as fh:
            fh.write(text + "\n")
    print(text if args.json else render_text(report, getattr(args, "timings", None)))
    return code


if __name__ == "__main__":
    sys.exit(main())
