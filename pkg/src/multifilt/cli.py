"""Command line interface: JSON in, JSON report out.

Exit status is 0 on success, 2 when the reported verdict is false, and 1 on
malformed input (with the JSON path of the offending field).
"""
from __future__ import annotations

import argparse
import json
import sys
from typing import Any

from . import filtration as mf
from . import serialize as io
from . import solvable, toric
from .ordered_group import is_order_preserving, map_check


def _load(path: str, what: str) -> Any:
    try:
        with open(path) as fh:
            return json.load(fh)
    except OSError as e:
        raise io.InputError(what, f"cannot read {path}: {e.strerror}") from None
    except json.JSONDecodeError as e:
        raise io.InputError(what, f"invalid JSON: {e.msg} at line {e.lineno}") from None


def _text(obj: Any, prefix: str = "") -> list[str]:
    if isinstance(obj, dict):
        out = []
        for k, v in obj.items():
            out += _text(v, f"{prefix}{k}.")
        return out
    if isinstance(obj, list) and any(isinstance(v, (dict, list)) for v in obj):
        out = []
        for i, v in enumerate(obj):
            out += _text(v, f"{prefix}{i}.")
        return out
    return [f"{prefix[:-1]}: {json.dumps(obj)}"]


def _emit(report: Any, fmt: str) -> None:
    if fmt == "text":
        sys.stdout.write("\n".join(_text(report)) + "\n")
    else:
        sys.stdout.write(json.dumps(report, indent=2) + "\n")


def cmd_check(a) -> tuple[Any, bool]:
    F = io.dec_multifilt(_load(a.input, "--input"))
    checks = {
        "exhaustive": mf.is_exhaustive,
        "chain-separated": mf.is_chain_separated,
        "separated": mf.is_separated,
        "regular": mf.is_regular,
    }
    v = checks[a.property](F)
    return io.enc_verdict(v), v.verdict


def cmd_grade(a):
    F = io.dec_multifilt(_load(a.input, "--input"))
    if not F.index.is_strict:
        raise io.InputError("$.index", "cone is not strict; normalize first")
    if not F.total().is_full():
        raise io.InputError("$.generators", "filtration is not exhaustive")
    g = mf.grade(F)
    if isinstance(g, mf.Grading):
        return {"result": "grading", "grading": io.enc_grading(g)}, True
    return {"result": "witness", "witness": io.enc_witness(g)}, False


def cmd_ind(a):
    phi = io.dec_map(_load(a.map, "--map"))
    F = io.dec_multifilt(_load(a.input, "--input"))
    C = io.dec_cone(_load(a.target, "--target"))
    if phi.source_rank != F.index.rank or phi.target_rank != C.rank:
        raise io.InputError("--map", "ranks do not match the index lattices")
    if not is_order_preserving(phi, F.index, C):
        raise io.InputError("--map", "map is not order preserving")
    return io.enc_multifilt(mf.ind(phi, F, C)), True


def cmd_res(a):
    phi = io.dec_map(_load(a.map, "--map"))
    F = io.dec_multifilt(_load(a.input, "--input"))
    C = io.dec_cone(_load(a.source, "--source"))
    if phi.source_rank != C.rank or phi.target_rank != F.index.rank:
        raise io.InputError("--map", "ranks do not match the index lattices")
    chk = map_check(phi, C, F.index)
    if not (chk["surjective"] and chk["preimage_equals"]):
        raise io.InputError("--map", "restriction needs a surjection with source cone equal to the preimage")
    return io.enc_multifilt(mf.res_surjective(phi, C, F)), True


def cmd_shift(a):
    F = io.dec_multifilt(_load(a.input, "--input"))
    lam = io.parse_point(a.by)
    if len(lam) != F.index.rank:
        raise io.InputError("--by", f"expected {F.index.rank} integers")
    return io.enc_multifilt(mf.shift(F, lam)), True


def cmd_compare(a):
    F = io.dec_multifilt(_load(a.input, "--input"))
    G = io.dec_multifilt(_load(a.other, "--other"))
    eq = mf.compare(F, G)
    return {"property": "equal", "verdict": eq}, eq


def cmd_oracle(a):
    F = io.dec_multifilt(_load(a.input, "--input"))
    if a.window is None:
        raise io.InputError("--window", "required")
    W = io.parse_window(a.window)
    if len(W.lo) != F.index.rank:
        raise io.InputError("--window", f"expected corners in Z^{F.index.rank}")
    if not F.index.is_strict:
        raise io.InputError("$.index", "cone is not strict")
    v = mf.oracle_check(F, W, a.property)
    return io.enc_verdict(v), v.verdict


def _fan_family(a):
    fan = io.dec_fan(_load(a.fan, "--fan"))
    fam = io.dec_family(_load(a.family, "--family"), fan)
    return fan, fam


def cmd_toric_check(a):
    _, fam = _fan_family(a)
    r = toric.family_check(fam)
    return r, r["compatible"] and r["exhaustive"] and r["separated"]


def cmd_toric_classify(a):
    _, fam = _fan_family(a)
    r = toric.classify(fam)
    return r, r["torsion_free"]


def cmd_toric_pullback(a):
    phi = io.dec_map(_load(a.map, "--map"))
    fan = io.dec_fan(_load(a.fan, "--fan"))
    tfan = io.dec_fan(_load(a.target_fan, "--target-fan"))
    fam = io.dec_family(_load(a.family, "--family"), tfan)
    if phi.source_rank != fan.rank or phi.target_rank != tfan.rank:
        raise io.InputError("--map", "ranks do not match the fans")
    try:
        out = toric.pullback(phi, fan, tfan, fam)
    except ValueError as e:
        raise io.InputError("--map", str(e)) from None
    return io.enc_family(out), True


def cmd_solvable_cone(a):
    W = io.dec_weights(_load(a.weights, "--weights"))
    return io.enc_cone(solvable.weight_cone(W)), True


def cmd_solvable_rep(a):
    W = io.dec_weights(_load(a.weights, "--weights"))
    V = io.dec_rep(_load(a.rep, "--rep"), W.M_rank)
    try:
        F = solvable.rep_multifilt(W, V)
    except ValueError as e:
        raise io.InputError("--rep", str(e)) from None
    return io.enc_multifilt(F), True


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="multifilt", description=__doc__.splitlines()[0])
    sub = p.add_subparsers(dest="command", required=True)

    def cmd(name, func, *args):
        sp = sub.add_parser(name)
        for flag in args:
            sp.add_argument(f"--{flag}", required=True)
        sp.add_argument("--format", choices=["json", "text"], default="json")
        sp.set_defaults(func=func)
        return sp

    sp = cmd("check", cmd_check, "input")
    sp.add_argument("--property", choices=["exhaustive", "chain-separated", "separated", "regular"], required=True)
    cmd("grade", cmd_grade, "input")
    cmd("ind", cmd_ind, "map", "input", "target")
    cmd("res", cmd_res, "map", "input", "source")
    cmd("shift", cmd_shift, "input", "by")
    cmd("compare", cmd_compare, "input", "other")
    sp = cmd("oracle", cmd_oracle, "input")
    sp.add_argument("--window")
    sp.add_argument("--property", choices=["regular", "separated"], required=True)
    cmd("toric-check", cmd_toric_check, "fan", "family")
    cmd("toric-classify", cmd_toric_classify, "fan", "family")
    cmd("toric-pullback", cmd_toric_pullback, "map", "fan", "target-fan", "family")
    cmd("solvable-cone", cmd_solvable_cone, "weights")
    cmd("solvable-rep", cmd_solvable_rep, "weights", "rep")
    return p


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        report, ok = args.func(args)
    except io.InputError as e:
        _emit({"error": e.message, "path": e.path}, "json")
        return 1
    except mf.OracleCapExceeded as e:
        _emit({"error": str(e), "path": "--window"}, "json")
        return 1
    _emit(report, args.format)
    return 0 if ok else 2


if __name__ == "__main__":
    sys.exit(main())
