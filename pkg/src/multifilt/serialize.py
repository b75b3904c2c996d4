"""JSON encoding of the package's objects.

Lattice points and covectors are JSON integers. Rational entries of vectors
in E are strings "p/q", written "p" when q = 1.
"""
from __future__ import annotations

from fractions import Fraction
from typing import Any

from . import exactlin as el
from .exactlin import Subspace
from .filtration import Grading, Multifiltration, RegularityWitness, Verdict, Window
from .ordered_group import Cone, LatticeMap, cone_close
from .solvable import GradedRep, WeightData
from .toric import Fan, KlyachkoData, SigmaFamily, fan_build, quotient_index


class InputError(ValueError):
    def __init__(self, path: str, message: str):
        super().__init__(f"{path}: {message}")
        self.path = path
        self.message = message


# -- encoding -----------------------------------------------------------------


def rat(x: Fraction) -> str:
    x = Fraction(x)
    return str(x.numerator) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"


def enc_space(S: Subspace) -> list:
    return [[rat(x) for x in v] for v in S.basis]


def enc_vectors(vs) -> list:
    return [[rat(x) for x in v] for v in vs]


def enc_cone(C: Cone) -> dict:
    return {
        "lattice_rank": C.rank,
        "generators": [list(g) for g in C.generators],
        "lineality": [list(v) for v in C.lineality],
        "facets": [list(f) for f in C.facets],
    }


def enc_map(phi: LatticeMap) -> dict:
    return {"source_rank": phi.source_rank, "target_rank": phi.target_rank, "matrix": [list(r) for r in phi.matrix]}


def enc_multifilt(F: Multifiltration) -> dict:
    return {
        "index": enc_cone(F.index),
        "ambient_dim": F.ambient_dim,
        "generators": [{"point": list(p), "space": enc_space(S)} for p, S in F.generators],
    }


def enc_grading(G: Grading) -> dict:
    return {
        "index": enc_cone(G.index),
        "ambient_dim": G.ambient_dim,
        "pieces": [{"point": list(p), "space": enc_space(S)} for p, S in G.pieces],
    }


def enc_witness(w: RegularityWitness) -> dict:
    return {
        "K1": [list(k) for k in w.K1],
        "K2": [list(k) for k in w.K2],
        "lhs": enc_space(w.lhs),
        "rhs": enc_space(w.rhs),
    }


def enc_any(x: Any) -> Any:
    if isinstance(x, Subspace):
        return enc_space(x)
    if isinstance(x, Grading):
        return enc_grading(x)
    if isinstance(x, RegularityWitness):
        return enc_witness(x)
    if isinstance(x, Multifiltration):
        return enc_multifilt(x)
    if isinstance(x, Fraction):
        return rat(x)
    if isinstance(x, dict):
        return {k: enc_any(v) for k, v in x.items()}
    if isinstance(x, (list, tuple)):
        return [enc_any(v) for v in x]
    return x


def enc_verdict(v: Verdict) -> dict:
    out = {"property": v.property, "verdict": v.verdict}
    if v.certificate is not None:
        out["certificate"] = enc_any(v.certificate)
    if v.witness is not None:
        out["witness"] = enc_any(v.witness)
    return out


def enc_fan(fan: Fan) -> dict:
    return {"N_rank": fan.rank, "max_cones": [[list(r) for r in c.generators] for c in fan.max_cones]}


def enc_family(fam: SigmaFamily) -> dict:
    return {
        "E_dim": fam.E_dim,
        "cones": [{"cone_index": i, "multifiltration": enc_multifilt(F)} for i, F in enumerate(fam.filtrations)],
    }


def enc_klyachko(K: KlyachkoData) -> dict:
    return {
        "E_dim": K.E_dim,
        "rays": [
            {"ray": list(r), "jumps": [{"level": lv, "space": enc_space(V)} for lv, V in jumps]} for r, jumps in K.rays
        ],
    }


def enc_weights(W: WeightData) -> dict:
    return {"M_rank": W.M_rank, "weights": [list(w) for w in W.weights]}


def enc_rep(V: GradedRep) -> dict:
    return {"V_dim": V.V_dim, "pieces": [{"weight": list(w), "space": enc_space(S)} for w, S in V.pieces]}


# -- decoding -----------------------------------------------------------------


def _get(d: Any, key: str, path: str) -> Any:
    if not isinstance(d, dict):
        raise InputError(path, "expected an object")
    if key not in d:
        raise InputError(f"{path}.{key}", "missing field")
    return d[key]


def _int(x: Any, path: str) -> int:
    if isinstance(x, bool) or not isinstance(x, int):
        raise InputError(path, "expected an integer")
    return x


def _nat(x: Any, path: str) -> int:
    v = _int(x, path)
    if v < 0:
        raise InputError(path, "expected a nonnegative integer")
    return v


def _list(x: Any, path: str) -> list:
    if not isinstance(x, list):
        raise InputError(path, "expected a list")
    return x


def _intvec(x: Any, n: int, path: str) -> tuple[int, ...]:
    xs = _list(x, path)
    if len(xs) != n:
        raise InputError(path, f"expected {n} integers, got {len(xs)}")
    return tuple(_int(v, f"{path}[{i}]") for i, v in enumerate(xs))


def _rational(x: Any, path: str) -> Fraction:
    if isinstance(x, bool):
        raise InputError(path, "expected a rational")
    if isinstance(x, int):
        return Fraction(x)
    if isinstance(x, str):
        try:
            return Fraction(x)
        except (ValueError, ZeroDivisionError):
            pass
    raise InputError(path, "expected a rational string like \"p/q\"")


def dec_space(x: Any, d: int, path: str) -> Subspace:
    rows = []
    for i, v in enumerate(_list(x, path)):
        vs = _list(v, f"{path}[{i}]")
        if len(vs) != d:
            raise InputError(f"{path}[{i}]", f"expected a vector of length {d}")
        rows.append([_rational(a, f"{path}[{i}][{j}]") for j, a in enumerate(vs)])
    return el.subspace_from_vectors(d, rows)


def dec_cone(x: Any, path: str = "$") -> Cone:
    n = _nat(_get(x, "lattice_rank", path), f"{path}.lattice_rank")
    has_g, has_f = isinstance(x, dict) and "generators" in x, isinstance(x, dict) and "facets" in x
    if not has_g and not has_f:
        raise InputError(path, "cone needs generators or facets")
    if has_g:
        gens = [_intvec(g, n, f"{path}.generators[{i}]") for i, g in enumerate(_list(x["generators"], f"{path}.generators"))]
        gens += [v for i, g in enumerate(_list(x.get("lineality", []), f"{path}.lineality"))
                 for v in (_intvec(g, n, f"{path}.lineality[{i}]"), tuple(-a for a in _intvec(g, n, f"{path}.lineality[{i}]")))]
        C = cone_close(n, generators=gens)
        if has_f:
            fs = [_intvec(f, n, f"{path}.facets[{i}]") for i, f in enumerate(_list(x["facets"], f"{path}.facets"))]
            if cone_close(n, facets=fs) != C:
                raise InputError(f"{path}.facets", "facets do not describe the cone of the generators")
        return C
    fs = [_intvec(f, n, f"{path}.facets[{i}]") for i, f in enumerate(_list(x["facets"], f"{path}.facets"))]
    return cone_close(n, facets=fs)


def dec_map(x: Any, path: str = "$") -> LatticeMap:
    s = _nat(_get(x, "source_rank", path), f"{path}.source_rank")
    t = _nat(_get(x, "target_rank", path), f"{path}.target_rank")
    rows = _list(_get(x, "matrix", path), f"{path}.matrix")
    if len(rows) != t:
        raise InputError(f"{path}.matrix", f"expected {t} rows")
    return LatticeMap(s, t, tuple(_intvec(r, s, f"{path}.matrix[{i}]") for i, r in enumerate(rows)))


def dec_multifilt(x: Any, path: str = "$") -> Multifiltration:
    C = dec_cone(_get(x, "index", path), f"{path}.index")
    d = _nat(_get(x, "ambient_dim", path), f"{path}.ambient_dim")
    gens = []
    for i, g in enumerate(_list(_get(x, "generators", path), f"{path}.generators")):
        gp = f"{path}.generators[{i}]"
        gens.append((_intvec(_get(g, "point", gp), C.rank, f"{gp}.point"), dec_space(_get(g, "space", gp), d, f"{gp}.space")))
    return Multifiltration.build(C, d, gens)


def dec_fan(x: Any, path: str = "$") -> Fan:
    n = _nat(_get(x, "N_rank", path), f"{path}.N_rank")
    cones = []
    for i, c in enumerate(_list(_get(x, "max_cones", path), f"{path}.max_cones")):
        cones.append([_intvec(r, n, f"{path}.max_cones[{i}][{j}]") for j, r in enumerate(_list(c, f"{path}.max_cones[{i}]"))])
    try:
        return fan_build(n, cones)
    except ValueError as e:
        raise InputError(f"{path}.max_cones", str(e)) from None


def dec_family(x: Any, fan: Fan, path: str = "$") -> SigmaFamily:
    d = _nat(_get(x, "E_dim", path), f"{path}.E_dim")
    entries = _list(_get(x, "cones", path), f"{path}.cones")
    slots: list = [None] * len(fan.max_cones)
    for k, e in enumerate(entries):
        ep = f"{path}.cones[{k}]"
        i = _nat(_get(e, "cone_index", ep), f"{ep}.cone_index")
        if i >= len(slots):
            raise InputError(f"{ep}.cone_index", "no such maximal cone")
        F = dec_multifilt(_get(e, "multifiltration", ep), f"{ep}.multifiltration")
        expected = quotient_index(fan.max_cones[i]).image
        if F.index != expected:
            raise InputError(f"{ep}.multifiltration.index", "index must be M(sigma) with the image of the dual cone")
        if F.ambient_dim != d:
            raise InputError(f"{ep}.multifiltration.ambient_dim", "does not match E_dim")
        slots[i] = F
    for i, F in enumerate(slots):
        if F is None:
            raise InputError(f"{path}.cones", f"no multifiltration for maximal cone {i}")
    return SigmaFamily(fan, d, tuple(slots))


def dec_weights(x: Any, path: str = "$") -> WeightData:
    n = _nat(_get(x, "M_rank", path), f"{path}.M_rank")
    ws = [_intvec(w, n, f"{path}.weights[{i}]") for i, w in enumerate(_list(_get(x, "weights", path), f"{path}.weights"))]
    return WeightData(n, tuple(ws))


def dec_rep(x: Any, M_rank: int, path: str = "$") -> GradedRep:
    d = _nat(_get(x, "V_dim", path), f"{path}.V_dim")
    pieces = []
    for i, p in enumerate(_list(_get(x, "pieces", path), f"{path}.pieces")):
        pp = f"{path}.pieces[{i}]"
        pieces.append((_intvec(_get(p, "weight", pp), M_rank, f"{pp}.weight"), dec_space(_get(p, "space", pp), d, f"{pp}.space")))
    return GradedRep(d, tuple(pieces))


def parse_point(s: str, path: str = "--by") -> tuple[int, ...]:
    try:
        return tuple(int(v) for v in s.split(",")) if s.strip() else ()
    except ValueError:
        raise InputError(path, "expected comma separated integers") from None


def parse_window(s: str) -> Window:
    if ":" not in s:
        raise InputError("--window", "expected lo1,lo2:hi1,hi2")
    a, b = s.split(":", 1)
    lo, hi = parse_point(a, "--window"), parse_point(b, "--window")
    if len(lo) != len(hi) or any(x > y for x, y in zip(lo, hi)):
        raise InputError("--window", "corners must have equal length and lo <= hi")
    return Window(lo, hi)
