"""Command-line entry point: ``picard <command> ...``.

Output is JSON by default with floats rounded to 12 significant digits, so the
same input and configuration always print the same bytes. Exit status: 0 on
success, 1 when a check fails, 2 on malformed input.
"""

from __future__ import annotations

import argparse
import json
import math
import sys
from pathlib import Path
from typing import Any, Sequence

from . import acceptance
from .config import ConfigError, RunConfig, load_config
from .elliptic import AmbiguousClassification, classify_point, fixed_set, point_stabilizer, verify_table1
from .exhaustion import (
    NAMED_FAMILY_WORDS,
    ConvergenceError,
    ParabolicRep,
    admissibility_clause,
    argmax_parabolics,
    enumerate_isotropic,
    f_values,
    first_contact,
    in_spine,
    max_height,
    named_family,
    pairing_norm,
    parse_family,
    sort_family,
)
from .gaussian import GaussInt, GaussVec3
from .group import FORM, GENERATORS, GMatrix, is_gamma_member, parse_element
from .horo import HoroPoint, act, in_siegel_strip, siegel_reduce
from .subgroups import ClosureCapExceeded, closure, identify, report


class UsageError(ValueError):
    pass


class CheckFailed(RuntimeError):
    """Raised with a report attached when a verification command fails."""

    def __init__(self, payload):
        super().__init__("check failed")
        self.payload = payload


# ---------------------------------------------------------------------------
# input parsing


def _parse_real(text: str, where: str) -> float:
    try:
        x = float(text)
    except ValueError:
        raise UsageError(f"{where}: not a real number: {text!r}") from None
    if not math.isfinite(x):
        raise UsageError(f"{where}: must be finite, got {text!r}")
    return x


def _parse_complex(text: str, where: str) -> complex:
    t = text.strip().replace(" ", "")
    if not t:
        raise UsageError(f"{where}: empty")
    if t.endswith("i"):
        # "i", "-i", "2i", "0.5+0.5i"
        head = t[:-1]
        if head in ("", "+", "-") or head[-1] in "+-":
            t = head + "1j"
        else:
            t = head + "j"
    try:
        return complex(t)
    except ValueError:
        raise UsageError(f"{where}: not a complex number: {text!r}") from None


def parse_point(text: str, arg: str = "POINT") -> HoroPoint:
    """``y,beta,r`` (beta may be complex, e.g. ``1,0.5+0.5i,0``) or point JSON."""
    text = text.strip()
    if text.startswith("{"):
        try:
            d = json.loads(text)
            return HoroPoint.from_json(d)
        except json.JSONDecodeError as exc:
            raise UsageError(f"{arg}: bad JSON at column {exc.colno}: {exc.msg}") from None
        except (KeyError, TypeError, ValueError, IndexError) as exc:
            raise UsageError(f"{arg}: bad point JSON: {exc}") from None
    parts = text.split(",")
    if len(parts) != 3:
        raise UsageError(f"{arg}: expected 'y,beta,r' with 3 fields, got {len(parts)} in {text!r}")
    y = _parse_real(parts[0], f"{arg} field 1 (y)")
    beta = _parse_complex(parts[1], f"{arg} field 2 (beta)")
    r = _parse_real(parts[2], f"{arg} field 3 (r)")
    if not y > 0:
        raise UsageError(f"{arg} field 1 (y): must be positive, got {parts[0]!r}")
    return HoroPoint(y, beta, r)


def parse_gens(texts: Sequence[str], arg: str = "GENS") -> list[GMatrix]:
    out = []
    for k, t in enumerate(texts, 1):
        try:
            g = parse_element(t)
        except ValueError as exc:
            raise UsageError(f"{arg} #{k}: {exc}") from None
        if not is_gamma_member(g):
            raise UsageError(f"{arg} #{k}: {t!r} is not in Gamma (det != 1 or form not preserved)")
        out.append(g)
    if not out:
        raise UsageError(f"{arg}: at least one generator required")
    return out


def _read_family(spec: str) -> tuple[ParabolicRep, ...]:
    if spec in NAMED_FAMILY_WORDS:
        return named_family(spec)
    path = Path(spec)
    if not path.exists():
        raise UsageError(f"{spec!r} is neither a named family ({', '.join(NAMED_FAMILY_WORDS)}) nor a file")
    try:
        return parse_family(path.read_text())
    except ValueError as exc:
        raise UsageError(f"{path}:{exc}") from None


# ---------------------------------------------------------------------------
# output


def _clean(x: Any) -> Any:
    if isinstance(x, bool) or x is None or isinstance(x, (int, str)):
        return x
    if isinstance(x, float):
        if not math.isfinite(x):
            return str(x)
        y = float(f"{x:.12g}")
        return 0.0 if y == 0 else y
    if isinstance(x, complex):
        return [_clean(x.real), _clean(x.imag)]
    if isinstance(x, dict):
        return {str(k): _clean(v) for k, v in x.items()}
    if isinstance(x, (list, tuple)):
        return [_clean(v) for v in x]
    if isinstance(x, (GMatrix, GaussInt, GaussVec3, ParabolicRep)):
        return str(x)
    if hasattr(x, "item"):  # numpy scalar
        return _clean(x.item())
    raise TypeError(f"cannot serialize {type(x).__name__}")


def render(payload: Any, fmt: str) -> str:
    payload = _clean(payload)
    if fmt == "json":
        return json.dumps(payload, indent=2, sort_keys=False)
    lines: list[str] = []

    def walk(v, prefix):
        if isinstance(v, dict):
            for k, w in v.items():
                walk(w, f"{prefix}.{k}" if prefix else k)
        elif isinstance(v, list) and not all(isinstance(w, (int, float)) for w in v):
            if not v:
                lines.append(f"{prefix}: (none)")
            for k, w in enumerate(v):
                walk(w, f"{prefix}[{k}]")
        else:
            lines.append(f"{prefix}: {v if not isinstance(v, list) else ' '.join(map(str, v))}")

    walk(payload, "")
    return "\n".join(lines)


# ---------------------------------------------------------------------------
# commands


def cmd_verify_generators(args, cfg):
    rows = {}
    for name, g in GENERATORS.items():
        rows[name] = {
            "matrix": g,
            "det_is_one": g.det() == GaussInt(1, 0),
            "preserves_form": g.star() @ FORM @ g == FORM,
        }
        rows[name]["member"] = rows[name]["det_is_one"] and rows[name]["preserves_form"]
    n = sum(r["member"] for r in rows.values())
    out = {"generators": rows, "members": f"{n}/{len(rows)}"}
    if n != len(rows):
        raise CheckFailed(out)
    return out


def _closure(gens):
    try:
        return closure(gens)
    except ClosureCapExceeded as exc:
        raise CheckFailed({"error": str(exc)}) from None


def cmd_closure(args, cfg):
    s = _closure(parse_gens(args.gens))
    return {"generators": s.generators, "order": s.order, "elements": s.elements}


def cmd_identify(args, cfg):
    return report(_closure(parse_gens(args.gens)))


def cmd_act(args, cfg):
    (g,) = parse_gens([args.matrix], "MATRIX")
    z = parse_point(args.point)
    return {"matrix": g, "point": z.to_json(), "image": act(g, z).to_json()}


def cmd_reduce(args, cfg):
    z = parse_point(args.point)
    zr, w = siegel_reduce(z, cfg.tolerance)
    return {
        "point": z.to_json(),
        "reduced_point": zr.to_json(),
        "word": str(w) or "id",
        "in_strip": in_siegel_strip(zr, cfg.tolerance),
    }


def cmd_f_values(args, cfg):
    z = parse_point(args.point)
    if args.height < 1:
        raise UsageError(f"--height: must be >= 1, got {args.height}")
    fam = enumerate_isotropic(args.height)
    vals = f_values(fam, z)
    top = max_height(z)
    return {
        "point": z.to_json(),
        "height": args.height,
        "values": {str(P): v for P, v in vals.items()},
        "max_height": top,
        "argmax": [str(P) for P in argmax_parabolics(z, cfg.tolerance)],
    }


def cmd_spine_test(args, cfg):
    z = parse_point(args.point)
    top = argmax_parabolics(z, cfg.tolerance)
    return {
        "point": z.to_json(),
        "in_spine": in_spine(z, cfg.tolerance),
        "max_height": max_height(z),
        "argmax": [str(P) for P in top],
    }


def cmd_admissible(args, cfg):
    fam = _read_family(args.family)
    fam = sort_family(fam)
    clause = admissibility_clause(fam)
    out = {
        "family": [str(P) for P in fam],
        "size": len(fam),
        "max_pairing_norm": max(pairing_norm(a, b) for a in fam for b in fam),
        "clause": clause,
        "strongly_admissible": clause is not None,
    }
    if clause is None:
        raise CheckFailed(out)
    return out


def cmd_first_contact(args, cfg):
    fam = sort_family(_read_family(args.family))
    if admissibility_clause(fam) is None:
        raise CheckFailed({"family": [str(P) for P in fam], "error": "family is not strongly admissible"})
    try:
        z = first_contact(fam, budget=cfg.optimizer_budget)
    except ConvergenceError as exc:
        raise CheckFailed({"family": [str(P) for P in fam], "error": str(exc)}) from None
    vals = f_values(fam, z)
    return {
        "point": z.to_json(),
        "values": {str(P): v for P, v in vals.items()},
        "family": args.family,
    }


def cmd_enumerate_isotropic(args, cfg):
    if args.height < 1:
        raise UsageError(f"H: must be >= 1, got {args.height}")
    vecs = enumerate_isotropic(args.height)
    return {"height": args.height, "count": len(vecs), "vectors": [str(P) for P in vecs]}


def cmd_fixed_set(args, cfg):
    s = _closure(parse_gens(args.gens))
    if s.order == 1:
        raise UsageError("GENS: generate the trivial group, whose fixed set is all of D")
    return {"generators": s.generators, "order": s.order, "fixed_set": fixed_set(s).to_json()}


def cmd_stabilizer(args, cfg):
    z = parse_point(args.point)
    if z.y < 1e-6:
        raise UsageError(f"POINT: y = {z.y:g} is within 1e-6 of the boundary")
    s = point_stabilizer(z, cfg.entry_norm_bound)
    return {
        "point": z.to_json(),
        "entry_norm_bound": cfg.entry_norm_bound,
        "order": s.order,
        "label": identify(s),
        "generators": s.generators,
    }


def cmd_classify(args, cfg):
    z = parse_point(args.point)
    if z.y < 1e-6:
        raise UsageError(f"POINT: y = {z.y:g} is within 1e-6 of the boundary")
    try:
        cls, stab = classify_point(z, cfg.entry_norm_bound)
    except AmbiguousClassification as exc:
        raise CheckFailed({"point": z.to_json(), "error": str(exc)}) from None
    out = cls.to_json(stab)
    out["entry_norm_bound"] = cfg.entry_norm_bound
    out["fixed_set"] = fixed_set(stab).to_json() if stab.order > 1 else {"kind": "all"}
    return out


def cmd_verify_table1(args, cfg):
    rows = verify_table1()
    out = {"rows": rows, "passed": sum(r["pass"] for r in rows), "total": len(rows)}
    if out["passed"] != out["total"]:
        raise CheckFailed(out)
    return out


def cmd_verify_propositions(args, cfg):
    only = None
    if args.only:
        try:
            only = {int(x) for x in args.only.split(",")}
        except ValueError:
            raise UsageError(f"--only: expected comma-separated criterion numbers, got {args.only!r}") from None
        bad = sorted(k for k in only if not 1 <= k <= len(acceptance.CRITERIA))
        if bad:
            raise UsageError(f"--only: no criterion {bad[0]}")
    results = acceptance.run_all(cfg, only)
    out = {
        "criteria": [
            {"number": r.number, "title": r.title, "pass": r.passed, "detail": r.detail} for r in results
        ],
        "passed": sum(r.passed for r in results),
        "total": len(results),
    }
    if cfg.output == "text":
        out = {"matrix": [r.line() for r in results], "passed": out["passed"], "total": out["total"]}
    if out["passed"] != out["total"]:
        raise CheckFailed(out)
    return out


# ---------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    def common(parser, default):
        parser.add_argument("--config", metavar="FILE", default=default, help="flat key=value file overriding the defaults")
        parser.add_argument("--output", choices=("json", "text"), default=default)
        parser.add_argument("--tolerance", type=float, default=default)
        parser.add_argument("--entry-norm-bound", type=int, default=default)
        parser.add_argument("--optimizer-budget", type=int, default=default)

    p = argparse.ArgumentParser(prog="picard", description=__doc__.splitlines()[0])
    common(p, None)
    # the same options after the command name; SUPPRESS keeps earlier values
    shared = argparse.ArgumentParser(add_help=False)
    common(shared, argparse.SUPPRESS)
    sub = p.add_subparsers(dest="command", required=True, metavar="COMMAND")

    def add(name, fn, help_):
        q = sub.add_parser(name, help=help_, parents=[shared])
        q.set_defaults(fn=fn)
        return q

    add("verify-generators", cmd_verify_generators, "check the six generators lie in Gamma")
    add("closure", cmd_closure, "elements of the finite group generated").add_argument("gens", nargs="+", metavar="GENS")
    add("identify", cmd_identify, "structure label of the generated group").add_argument("gens", nargs="+", metavar="GENS")
    q = add("act", cmd_act, "apply a group element to a point")
    q.add_argument("matrix", metavar="MATRIX")
    q.add_argument("point", metavar="POINT")
    add("reduce", cmd_reduce, "move a point into the Siegel strip").add_argument("point", metavar="POINT")
    q = add("f-values", cmd_f_values, "exhaustion values of all cusps up to a height")
    q.add_argument("point", metavar="POINT")
    q.add_argument("--height", type=int, default=2)
    add("spine-test", cmd_spine_test, "is the point in the spine").add_argument("point", metavar="POINT")
    add("admissible", cmd_admissible, "strong admissibility of a family file").add_argument("family", metavar="FAMILY-FILE")
    add("first-contact", cmd_first_contact, "first-contact point of a family").add_argument("family", metavar="FAMILY")
    add("enumerate-isotropic", cmd_enumerate_isotropic, "canonical isotropic vectors up to a height").add_argument(
        "height", type=int, metavar="H"
    )
    add("fixed-set", cmd_fixed_set, "fixed set of a finite subgroup").add_argument("gens", nargs="+", metavar="GENS")
    add("stabilizer", cmd_stabilizer, "bounded stabilizer of a point").add_argument("point", metavar="POINT")
    add("classify", cmd_classify, "isotropy class of a point").add_argument("point", metavar="POINT")
    add("verify-table1", cmd_verify_table1, "reproduce the cell-stabilizer table")
    add("verify-propositions", cmd_verify_propositions, "run the acceptance suite").add_argument(
        "--only", metavar="N[,N...]", help="run only these criteria"
    )
    return p


def _config_from(args) -> RunConfig:
    cfg = RunConfig()
    if args.config:
        cfg = load_config(args.config, cfg)
    overrides = {
        "output": args.output,
        "tolerance": args.tolerance,
        "entry_norm_bound": args.entry_norm_bound,
        "optimizer_budget": args.optimizer_budget,
    }
    return cfg.replace(**{k: v for k, v in overrides.items() if v is not None})


def run(argv: Sequence[str] | None = None, stdout=None, stderr=None) -> int:
    stdout = stdout or sys.stdout
    stderr = stderr or sys.stderr
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        cfg = _config_from(args)
        payload = args.fn(args, cfg)
        code = 0
    except (UsageError, ConfigError) as exc:
        print(f"picard {args.command}: error: {exc}", file=stderr)
        return 2
    except CheckFailed as exc:
        payload, code = exc.payload, 1
    print(render(payload, cfg.output), file=stdout)
    return code


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
