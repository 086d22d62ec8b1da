"""Regenerate the bundled corpus under src/regbounds/corpus.

Log values and golden numbers come from closed forms evaluated with mpmath
at 256 bits and written with 45 significant digits.
"""
import json
from pathlib import Path

import mpmath

mpmath.mp.prec = 256
DIGITS = 45
OUT = Path(__file__).resolve().parents[1] / "src" / "regbounds" / "corpus"


def s(x):
    return mpmath.nstr(x, DIGITS, min_fixed=-mpmath.inf, max_fixed=mpmath.inf)


def rational_field(label, primes, units, basis):
    places = [{"id": "inf", "local_degree": 1, "kind": "archimedean"}]
    places += [{"id": str(p), "local_degree": 1, "kind": "non-archimedean"} for p in primes]
    return {
        "label": label,
        "degree": 1,
        "places": places,
        "units": [{"name": n, "rational": f} for n, f in units],
        "basis": basis,
    }


def real_quadratic(label, unit_name, unit_value, extra_powers=(2, 3)):
    L = mpmath.log(unit_value)
    units = [{"name": unit_name, "log_abs": {"r1": s(L), "r2": s(-L)}}]
    for e in extra_powers:
        units.append({"name": f"({unit_name})^{e}", "log_abs": {"r1": s(e * L), "r2": s(-e * L)}})
    return {
        "label": label,
        "degree": 2,
        "places": [
            {"id": "r1", "local_degree": 1, "kind": "archimedean"},
            {"id": "r2", "local_degree": 1, "kind": "archimedean"},
        ],
        "units": units,
        "basis": [unit_name],
    }


def mat(rows):
    return f"{len(rows)} {len(rows[0]) if rows else 0}\n" + "".join(" ".join(map(str, r)) + "\n" for r in rows)


def golden(value, tol="1e-30"):
    return {"value": s(value), "tol": tol}


def main():
    OUT.mkdir(parents=True, exist_ok=True)
    (OUT / "subgroups").mkdir(exist_ok=True)
    l2, l3, l5 = mpmath.log(2), mpmath.log(3), mpmath.log(5)
    sqrt2 = 1 + mpmath.sqrt(2)
    sqrt3 = 2 + mpmath.sqrt(3)
    phi = (1 + mpmath.sqrt(5)) / 2
    files = {}

    files["q_inf.json"] = rational_field("Q, S={inf}", [], [("1", {})], [])
    files["q_s2.json"] = rational_field("Q, S={inf,2}", [2], [("2", {"2": 1}), ("1/2", {"2": -1, "sign": 1}),
                                                               ("-4", {"2": 2, "sign": -1})], ["2"])
    files["q_s23.json"] = rational_field(
        "Q, S={inf,2,3}", [2, 3],
        [("2", {"2": 1}), ("3", {"3": 1}), ("6", {"2": 1, "3": 1}), ("2/3", {"2": 1, "3": -1}),
         ("4", {"2": 2}), ("-12", {"2": 2, "3": 1, "sign": -1})],
        ["2", "3"])
    files["q_s235.json"] = rational_field(
        "Q, S={inf,2,3,5}", [2, 3, 5],
        [("2", {"2": 1}), ("3", {"3": 1}), ("5", {"5": 1}), ("10", {"2": 1, "5": 1}),
         ("15/2", {"3": 1, "5": 1, "2": -1})],
        ["2", "3", "5"])
    files["q_sqrt2.json"] = real_quadratic("Q(sqrt 2)", "1+sqrt2", sqrt2)
    files["q_sqrt3.json"] = real_quadratic("Q(sqrt 3)", "2+sqrt3", sqrt3)
    files["q_sqrt5.json"] = real_quadratic("Q(sqrt 5)", "phi", phi)
    for name, data in files.items():
        (OUT / name).write_text(json.dumps(data, indent=2) + "\n")

    subgroups = {
        "s2_full.mat": [[1]], "s2_sq.mat": [[2]],
        "s23_full.mat": [[1, 0], [0, 1]], "s23_6_23.mat": [[1, 1], [1, -1]], "s23_mixed.mat": [[2, 1], [-1, 3]],
        "s235_full.mat": [[1, 0, 0], [0, 1, 0], [0, 0, 1]],
        "s235_mixed.mat": [[1, 1, 0], [0, 1, 1], [1, 0, 2]],
        "s235_skew.mat": [[2, -1, 1], [1, 3, 0], [0, 1, -2]],
        "r1_full.mat": [[1]], "r1_sq.mat": [[2]], "r1_cube.mat": [[3]],
        "rel_q_sqrt2.mat": [[1]], "rel_q_sqrt2_sq.mat": [[2]],
        "rel_rank3_full.mat": [[1, 0, 0], [0, 1, 0], [0, 0, 1]],
        "rel_rank3_mixed.mat": [[1, 1, 0], [-1, 2, 1], [0, 1, 3]],
    }
    for name, rows in subgroups.items():
        (OUT / "subgroups" / name).write_text(mat(rows))

    # extension Q(sqrt 2)/Q
    k_q = rational_field("Q", [], [], [])
    ext1 = {
        "label": "Q(sqrt 2)/Q",
        "k": k_q,
        "l": files["q_sqrt2.json"],
        "fiber_map": {"r1": "inf", "r2": "inf"},
        "relative_degree": 2,
        "norm_matrix": [],
    }
    (OUT / "ext_sqrt2_over_q.json").write_text(json.dumps(ext1, indent=2) + "\n")

    # Synthetic cubic extension of Q(sqrt 2) with signature (4, 1): places
    # w1, w2, w3 above v1 and w4 (real), w5 (complex) above v2.
    L = mpmath.log(sqrt2)
    lift = [L, L, L, -L, -L]
    R = [[1, -1, 0, 0, 0], [0, 1, -1, 0, 0], [0, 0, 0, 2, -1]]

    def rel(x, y, z):
        return [x * R[0][i] + y * R[1][i] + z * R[2][i] for i in range(5)]

    l7 = mpmath.log(7)
    rho_b = rel(l7, -l2, l3)
    rho_c = rel(-l3, l5, l2)
    rho_d = rel(l5, l7, -l3 / 2)
    rows = {
        "eta1": lift,
        "eta2": rho_b,
        "eta3": [a + b for a, b in zip(lift, rho_c)],
        "eta4": [-a + b for a, b in zip(lift, rho_d)],
    }
    w_ids = ["w1", "w2", "w3", "w4", "w5"]
    l_sys = {
        "label": "synthetic sextic l, signature (4,1)",
        "degree": 6,
        "places": [{"id": w, "local_degree": 2 if w == "w5" else 1, "kind": "archimedean"} for w in w_ids],
        "units": [{"name": n, "log_abs": {w: s(x) for w, x in zip(w_ids, row)}} for n, row in rows.items()],
        "basis": list(rows),
    }
    ext2 = {
        "label": "synthetic rank-3 relative extension over Q(sqrt 2)",
        "k": files["q_sqrt2.json"],
        "l": l_sys,
        "fiber_map": {"w1": "r1", "w2": "r1", "w3": "r1", "w4": "r2", "w5": "r2"},
        "relative_degree": 3,
        "norm_matrix": [[3, 0, 3, -3]],
        "relative_units": [[1, 0, 0, 1], [0, 1, 0, 0], [0, 0, 1, 1]],
    }
    (OUT / "ext_synthetic_rank3.json").write_text(json.dumps(ext2, indent=2) + "\n")

    # Relative-regulator oracle: in coordinates (x, y, z) on R1, R2, R3, dropping
    # w1 and w4 maps the relative lattice through a matrix of |det| 2.
    coords = [(l5, l7, -l3 / 2), (l7, -l2, l3), (-l3 + l5, l5 + l7, l2 - l3 / 2)]
    reg_rel = 2 * abs(mpmath.det(mpmath.matrix([list(c) for c in coords])))

    (OUT / "schinzel_eq.mat").write_text(mat([[1, 1], [-1, 1]]))
    (OUT / "schinzel_3x3.mat").write_text(mat([[4, -2, 7], [1, 5, -3], [-6, 0, 2]]))
    (OUT / "diag23.lat").write_text("2\n2 0\n0 3\n")
    (OUT / "skew3.lat").write_text(
        "3\n" + "\n".join(" ".join(s(mpmath.mpf(x)) for x in row) for row in
                          [["0.75", "-1.5", "0.25"], ["1.125", "0.5", "-2"], ["-0.5", "2.25", "1"]]) + "\n")

    manifest = {"global": {"volume_dims": [1, 2, 3, 4, 5], "mc_samples": 200000,
                           "j_dims": list(range(1, 9)), "schinzel_random": 500},
                "entries": [
        {"kind": "field", "path": "q_inf.json", "expected": {"regulator": golden(1)}},
        {"kind": "field", "path": "q_s2.json",
         "expected": {"regulator": golden(l2), "height:2": golden(l2), "height:-4": golden(2 * l2)},
         "subgroups": ["subgroups/s2_full.mat", "subgroups/s2_sq.mat"]},
        {"kind": "field", "path": "q_s23.json",
         "expected": {"regulator": golden(l2 * l3), "height:6": golden(mpmath.log(6)),
                      "height:2/3": golden(l3)},
         "subgroups": ["subgroups/s23_full.mat", "subgroups/s23_6_23.mat", "subgroups/s23_mixed.mat"]},
        {"kind": "field", "path": "q_s235.json",
         "expected": {"regulator": golden(l2 * l3 * l5), "height:15/2": golden(mpmath.log(15))},
         "subgroups": ["subgroups/s235_full.mat", "subgroups/s235_mixed.mat", "subgroups/s235_skew.mat"]},
        {"kind": "field", "path": "q_sqrt2.json",
         "expected": {"regulator": golden(mpmath.log(sqrt2)), "height:1+sqrt2": golden(mpmath.log(sqrt2) / 2)},
         "subgroups": ["subgroups/r1_full.mat", "subgroups/r1_sq.mat", "subgroups/r1_cube.mat"]},
        {"kind": "field", "path": "q_sqrt3.json",
         "expected": {"regulator": golden(mpmath.log(sqrt3))},
         "subgroups": ["subgroups/r1_full.mat", "subgroups/r1_sq.mat"]},
        {"kind": "field", "path": "q_sqrt5.json",
         "expected": {"regulator": golden(mpmath.log(phi))},
         "subgroups": ["subgroups/r1_full.mat", "subgroups/r1_cube.mat"]},
        {"kind": "extension", "path": "ext_sqrt2_over_q.json",
         "expected": {"relative_regulator": golden(mpmath.log(sqrt2))},
         "subgroups": ["subgroups/rel_q_sqrt2.mat", "subgroups/rel_q_sqrt2_sq.mat"]},
        {"kind": "extension", "path": "ext_synthetic_rank3.json",
         "expected": {"relative_regulator": golden(reg_rel), "image_index": {"value": "3", "tol": "0"}},
         "subgroups": ["subgroups/rel_rank3_full.mat", "subgroups/rel_rank3_mixed.mat"]},
        {"kind": "matrix", "path": "schinzel_eq.mat"},
        {"kind": "matrix", "path": "schinzel_3x3.mat"},
        {"kind": "lattice", "path": "diag23.lat"},
        {"kind": "lattice", "path": "skew3.lat"},
    ]}
    (OUT / "manifest.json").write_text(json.dumps(manifest, indent=2) + "\n")


if __name__ == "__main__":
    main()
