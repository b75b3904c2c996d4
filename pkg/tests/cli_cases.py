"""CLI golden cases: input documents, argument lists and expected exit codes.

Run ``python tests/cli_cases.py`` to rewrite tests/data and tests/golden after
an intentional output change.
"""
from __future__ import annotations

import contextlib
import io
import json
import random
import sys
from pathlib import Path

HERE = Path(__file__).parent
sys.path.insert(0, str(HERE))

import fixtures as fx  # noqa: E402
from multifilt import cli  # noqa: E402
from multifilt import serialize as ser  # noqa: E402
from multifilt.ordered_group import LatticeMap, quadrant  # noqa: E402
from multifilt.solvable import borel_weights  # noqa: E402

DATA = HERE / "data"
GOLDEN = HERE / "golden"


def documents() -> dict[str, object]:
    fam_a1 = fx._family(fx.FAN_A1, 2, [fx.random_regular(random.Random(5), quadrant(1), 2)])
    W3, _ = borel_weights(3)
    return {
        "quadrant_pair.json": ser.enc_multifilt(fx.quadrant_pair()),
        "quadrant_pair_quotient.json": ser.enc_multifilt(fx.quadrant_pair_quotient()),
        "wedge_pair.json": ser.enc_multifilt(fx.wedge_pair()),
        "wedge_pair_sub.json": ser.enc_multifilt(fx.wedge_pair_sub()),
        "octant_triple.json": ser.enc_multifilt(fx.octant_triple()),
        "octant_triple_sub.json": ser.enc_multifilt(fx.octant_triple_sub()),
        "points_zero_cone.json": ser.enc_multifilt(fx.point_filtration()),
        "sum_map.json": ser.enc_map(LatticeMap.from_rows(2, 1, [[1, 1]])),
        "proj_map.json": ser.enc_map(LatticeMap.from_rows(3, 2, [[1, 0, 0], [0, 1, 0]])),
        "half_space.json": {"lattice_rank": 3, "facets": [[1, 0, 0], [0, 1, 0]]},
        "ray.json": ser.enc_cone(quadrant(1)),
        "fan_wedge.json": ser.enc_fan(fx.FAN_WEDGE),
        "fan_a1.json": ser.enc_fan(fx.FAN_A1),
        "fan_a2.json": ser.enc_fan(fx.FAN_A2),
        "fan_a3.json": ser.enc_fan(fx.FAN_A3),
        "fan_p2.json": ser.enc_fan(fx.FAN_P2),
        "family_wedge.json": ser.enc_family(fx.family_wedge()),
        "family_wedge_sub.json": ser.enc_family(fx.family_wedge_sub()),
        "family_octant.json": ser.enc_family(fx.family_octant()),
        "family_octant_sub.json": ser.enc_family(fx.family_octant_sub()),
        "family_ideal.json": ser.enc_family(fx.family_ideal_origin()),
        "family_p2_bad.json": ser.enc_family(fx.family_p2_mismatch()),
        "family_a1.json": ser.enc_family(fam_a1),
        "map_a2_a1.json": ser.enc_map(fx.PSI_A2_A1),
        "weights_none.json": ser.enc_weights(fx.WEIGHTS_TRIVIAL),
        "weights_pm.json": ser.enc_weights(fx.WEIGHTS_PM),
        "weights_borel3.json": ser.enc_weights(W3),
        "rep.json": ser.enc_rep(fx.rep_example()),
        "bad_point.json": {
            "index": {"lattice_rank": 2, "generators": [[1, 0], [0, 1]]},
            "ambient_dim": 1,
            "generators": [{"point": [0, 0], "space": [["1"]]}, {"point": [1, "x"], "space": [["1"]]}],
        },
    }


def d(name: str) -> str:
    return str(DATA / name)


# (name, argv, expected exit code)
CASES = [
    ("check_exhaustive_quadrant_pair", ["check", "--input", d("quadrant_pair.json"), "--property", "exhaustive"], 0),
    ("check_chain_sep_quadrant_pair", ["check", "--input", d("quadrant_pair.json"), "--property", "chain-separated"], 0),
    ("check_separated_quadrant_pair", ["check", "--input", d("quadrant_pair.json"), "--property", "separated"], 0),
    ("check_regular_quadrant_pair", ["check", "--input", d("quadrant_pair.json"), "--property", "regular"], 0),
    ("check_regular_quadrant_pair_quotient", ["check", "--input", d("quadrant_pair_quotient.json"), "--property", "regular"], 2),
    ("check_separated_zero_cone", ["check", "--input", d("points_zero_cone.json"), "--property", "separated"], 2),
    ("grade_quadrant_pair", ["grade", "--input", d("quadrant_pair.json")], 0),
    ("grade_quadrant_pair_quotient", ["grade", "--input", d("quadrant_pair_quotient.json")], 2),
    ("grade_wedge_pair", ["grade", "--input", d("wedge_pair.json")], 0),
    ("grade_wedge_pair_sub", ["grade", "--input", d("wedge_pair_sub.json")], 2),
    ("grade_octant_triple", ["grade", "--input", d("octant_triple.json")], 0),
    ("grade_octant_triple_sub", ["grade", "--input", d("octant_triple_sub.json")], 2),
    ("grade_octant_triple_text", ["grade", "--input", d("octant_triple.json"), "--format", "text"], 0),
    ("oracle_quadrant_pair", ["oracle", "--input", d("quadrant_pair.json"), "--window=-2,-2:2,2", "--property", "regular"], 0),
    ("oracle_wedge_pair_sub", ["oracle", "--input", d("wedge_pair_sub.json"), "--window=-3,-3:1,1", "--property", "regular"], 2),
    ("oracle_sep_octant_triple_sub", ["oracle", "--input", d("octant_triple_sub.json"), "--window=-2,-2,-2:0,0,0", "--property", "separated"], 0),
    ("ind_sum_quadrant_pair", ["ind", "--map", d("sum_map.json"), "--input", d("quadrant_pair.json"), "--target", d("ray.json")], 0),
    ("res_quadrant_pair", ["res", "--map", d("proj_map.json"), "--input", d("quadrant_pair.json"), "--source", d("half_space.json")], 0),
    ("shift_wedge_pair", ["shift", "--input", d("wedge_pair.json"), "--by", "1,-2"], 0),
    ("compare_same", ["compare", "--input", d("quadrant_pair.json"), "--other", d("quadrant_pair.json")], 0),
    ("compare_diff", ["compare", "--input", d("wedge_pair.json"), "--other", d("quadrant_pair.json")], 2),
    ("toric_check_wedge", ["toric-check", "--fan", d("fan_wedge.json"), "--family", d("family_wedge.json")], 0),
    ("toric_check_p2_bad", ["toric-check", "--fan", d("fan_p2.json"), "--family", d("family_p2_bad.json")], 2),
    ("toric_classify_wedge", ["toric-classify", "--fan", d("fan_wedge.json"), "--family", d("family_wedge.json")], 0),
    ("toric_classify_wedge_sub", ["toric-classify", "--fan", d("fan_wedge.json"), "--family", d("family_wedge_sub.json")], 0),
    ("toric_classify_octant", ["toric-classify", "--fan", d("fan_a3.json"), "--family", d("family_octant.json")], 0),
    ("toric_classify_octant_sub", ["toric-classify", "--fan", d("fan_a3.json"), "--family", d("family_octant_sub.json")], 0),
    ("toric_classify_ideal", ["toric-classify", "--fan", d("fan_a2.json"), "--family", d("family_ideal.json")], 0),
    ("toric_pullback_a2_a1", ["toric-pullback", "--map", d("map_a2_a1.json"), "--fan", d("fan_a2.json"),
                              "--target-fan", d("fan_a1.json"), "--family", d("family_a1.json")], 0),
    ("solvable_cone_none", ["solvable-cone", "--weights", d("weights_none.json")], 0),
    ("solvable_cone_pm", ["solvable-cone", "--weights", d("weights_pm.json")], 0),
    ("solvable_cone_borel3", ["solvable-cone", "--weights", d("weights_borel3.json")], 0),
    ("solvable_rep_none", ["solvable-rep", "--weights", d("weights_none.json"), "--rep", d("rep.json")], 0),
    ("error_bad_point", ["grade", "--input", d("bad_point.json")], 1),
    ("error_missing_file", ["grade", "--input", d("no_such_file.json")], 1),
]


def run(argv: list[str]) -> tuple[int, str]:
    buf = io.StringIO()
    with contextlib.redirect_stdout(buf):
        code = cli.main(argv)
    out = buf.getvalue()
    # paths vary between checkouts; goldens store them relative to tests/
    return code, out.replace(str(HERE) + "/", "")


def write_all() -> None:
    DATA.mkdir(exist_ok=True)
    GOLDEN.mkdir(exist_ok=True)
    for name, doc in documents().items():
        (DATA / name).write_text(json.dumps(doc, indent=2) + "\n")
    for name, argv, want in CASES:
        code, out = run(argv)
        if code != want:
            raise SystemExit(f"{name}: exit {code}, expected {want}\n{out}")
        (GOLDEN / f"{name}.out").write_text(out)


if __name__ == "__main__":
    write_all()
