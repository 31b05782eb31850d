"""Write the curated QF_NRA corpus into benchmarks/curated/.

Every instance belongs to a small family whose status follows from a short
argument recorded next to the family, so the expected answers do not
depend on any solver.  Run from the repository root:

    python3 benchmarks/make_curated.py
"""

from __future__ import annotations

from fractions import Fraction
from math import isqrt
from pathlib import Path

OUT = Path(__file__).resolve().parent / "curated"


def num(q) -> str:
    q = Fraction(q)
    n, d = abs(q.numerator), q.denominator
    body = str(n) if d == 1 else f"(/ {n} {d})"
    return f"(- {body})" if q < 0 else body


def sq(t: str) -> str:
    return f"(* {t} {t})"


def script(name: str, status: str, vars_, asserts, bools=(), note="") -> tuple:
    lines = ["(set-logic QF_NRA)", f"(set-info :status {status})"]
    if note:
        lines.insert(0, f"; {note}")
    lines += [f"(declare-fun {v} () Real)" for v in vars_]
    lines += [f"(declare-fun {b} () Bool)" for b in bools]
    lines += [f"(assert {a})" for a in asserts]
    lines += ["(check-sat)", "(exit)"]
    return name, status, "\n".join(lines) + "\n"


def univariate():
    out = []
    # x^2 + c < 0 is sat iff c < 0
    for c in (-4, -1, 0, 1, 7):
        st = "sat" if c < 0 else "unsat"
        out.append(script(f"uni_sq_plus_{c + 10}", st, ["x"], [f"(< (+ {sq('x')} {num(c)}) 0)"],
                          note="x^2 + c < 0 holds somewhere iff c < 0"))
    # (x - a)(x - b) < 0 is sat iff a != b
    for a, b in ((1, 3), (-2, 5), (2, 2), (Fraction(1, 3), Fraction(1, 2)), (0, 0)):
        st = "sat" if a != b else "unsat"
        out.append(script(f"uni_between_{len(out)}", st, ["x"],
                          [f"(< (* (- x {num(a)}) (- x {num(b)})) 0)"],
                          note="product of two linear factors is negative strictly between distinct roots"))
    # x^3 = c always has a real root
    for c in (2, -5, 27):
        out.append(script(f"uni_cube_{len(out)}", "sat", ["x"], [f"(= (* x x x) {num(c)})"],
                          note="odd degree, so a real root exists"))
    # (x^2 - 1)^2 < 0 never; (x^2 - 2)^2 <= 0 exactly at +-sqrt 2
    out.append(script("uni_sos_strict", "unsat", ["x"], [f"(< {sq('(- (* x x) 1)')} 0)"],
                      note="a square is never negative"))
    out.append(script("uni_sos_touch", "sat", ["x"], [f"(<= {sq('(- (* x x) 2)')} 0)"],
                      note="zero at x = sqrt 2"))
    # sqrt 2 inside and outside narrow rational windows
    out.append(script("uni_sqrt2_window", "sat", ["x"],
                      ["(= (* x x) 2)", f"(> x {num(Fraction(141, 100))})", f"(< x {num(Fraction(142, 100))})"],
                      note="sqrt 2 = 1.41421..."))
    out.append(script("uni_sqrt2_gap", "unsat", ["x"],
                      ["(= (* x x) 2)", f"(> x {num(Fraction(1415, 1000))})", f"(< x {num(Fraction(1416, 1000))})"],
                      note="sqrt 2 = 1.41421... lies below 1.415"))
    out.append(script("uni_quartic_min", "unsat", ["x"],
                      [f"(< (+ (* x x x x) (* (- 2) x x) 1) 0)"],
                      note="x^4 - 2x^2 + 1 = (x^2 - 1)^2"))
    out.append(script("uni_quartic_neg", "sat", ["x"],
                      [f"(< (+ (* x x x x) (* (- 5) x x) 4) 0)"],
                      note="(x^2 - 1)(x^2 - 4) < 0 for 1 < |x| < 2"))
    # discriminant family x^2 + b x + c < 0 is sat iff b^2 > 4c
    for b, c in ((3, 2), (2, 1), (1, 1), (0, -3), (4, 5), (5, 6)):
        st = "sat" if b * b > 4 * c else "unsat"
        out.append(script(f"uni_disc_{b}_{c}", st, ["x"],
                          [f"(< (+ (* x x) (* {num(b)} x) {num(c)}) 0)"],
                          note="monic quadratic is negative somewhere iff its discriminant is positive"))
    # x^5 - x - 1 = 0 has exactly one real root in (1, 2)
    out.append(script("uni_quintic_root", "sat", ["x"],
                      ["(= (- (* x x x x x) x 1) 0)", "(> x 1)", "(< x 2)"],
                      note="x^5 - x - 1 changes sign on (1, 2)"))
    out.append(script("uni_quintic_no_neg", "unsat", ["x"],
                      ["(= (- (* x x x x x) x 1) 0)", "(< x 0)"],
                      note="for x < 0: x^5 - x - 1 < 0 when x <= -1 and when -1 < x < 0 since x^5 - x < 1"))
    return out


def circle_line():
    out = []
    # x^2 + y^2 = r2, y = m x + c  meet iff c^2 <= r2 (1 + m^2)
    params = [(1, 0, 0), (1, 1, 1), (1, 1, 2), (4, 2, 4), (4, 2, 5), (2, -1, 2), (2, -1, 3),
              (9, 0, 3), (9, 0, 4), (1, 3, 3), (1, 3, 4), (5, 2, 5), (Fraction(1, 4), 0, Fraction(1, 2)),
              (Fraction(1, 4), 0, 1)]
    for i, (r2, m, c) in enumerate(params):
        st = "sat" if Fraction(c) ** 2 <= Fraction(r2) * (1 + m * m) else "unsat"
        out.append(script(f"circle_line_{i:02d}", st, ["x", "y"],
                          [f"(= (+ (* x x) (* y y)) {num(r2)})", f"(= y (+ (* {num(m)} x) {num(c)}))"],
                          note="line meets circle iff c^2 <= r^2 (1 + m^2)"))
    # open disc vs line: strict inequality needs c^2 < r2 (1 + m^2)
    for i, (r2, m, c) in enumerate([(1, 0, 1), (2, 1, 2), (2, 1, 1), (5, 2, 4)]):
        st = "sat" if Fraction(c) ** 2 < Fraction(r2) * (1 + m * m) else "unsat"
        out.append(script(f"disc_line_{i:02d}", st, ["x", "y"],
                          [f"(< (+ (* x x) (* y y)) {num(r2)})", f"(= y (+ (* {num(m)} x) {num(c)}))"],
                          note="line meets the open disc iff c^2 < r^2 (1 + m^2)"))
    return out


def circle_circle():
    out = []
    # circles centred (0,0) radius^2 r1 and (d,0) radius^2 r2 meet iff |r1-r2| <= d <= r1+r2
    params = [(1, 1, 1), (1, 1, 2), (1, 1, 3), (4, 1, 1), (4, 1, Fraction(1, 2)), (9, 4, 5), (9, 4, 6),
              (9, 1, 2), (4, 4, 0), (1, 4, 1)]
    for i, (R1, R2, d) in enumerate(params):
        r1, r2 = isqrt(R1), isqrt(R2)
        assert r1 * r1 == R1 and r2 * r2 == R2
        dd = Fraction(d)
        if dd == 0:
            st = "sat" if r1 == r2 else "unsat"
        else:
            st = "sat" if abs(r1 - r2) <= dd <= r1 + r2 else "unsat"
        out.append(script(f"two_circles_{i:02d}", st, ["x", "y"],
                          [f"(= (+ (* x x) (* y y)) {num(R1)})",
                           f"(= (+ (* (- x {num(d)}) (- x {num(d)})) (* y y)) {num(R2)})"],
                          note="two circles meet iff |r1 - r2| <= d <= r1 + r2"))
    # hyperbola xy = k and circle
    for i, (k, R) in enumerate([(1, 2), (1, 1), (2, 4), (2, 3), (3, 7)]):
        st = "sat" if R >= 2 * k else "unsat"
        out.append(script(f"hyperbola_circle_{i}", st, ["x", "y"],
                          [f"(= (* x y) {num(k)})", f"(= (+ (* x x) (* y y)) {num(R)})"],
                          note="x^2 + y^2 >= 2|xy| with equality on |x| = |y|"))
    return out


def positivity():
    out = []
    x, y = "x", "y"
    motzkin = "(+ (* x x x x y y) (* x x y y y y) (* (- 3) x x y y) 1)"
    out.append(script("motzkin_neg", "unsat", [x, y], [f"(< {motzkin} 0)"],
                      note="the Motzkin polynomial is nonnegative (AM-GM)"))
    out.append(script("motzkin_zero", "sat", [x, y], [f"(<= {motzkin} 0)"],
                      note="the Motzkin polynomial vanishes at |x| = |y| = 1"))
    out.append(script("motzkin_zero_off", "unsat", [x, y],
                      [f"(= {motzkin} 0)", "(> (* x x) 2)"],
                      note="zeros of the Motzkin polynomial have x^2 = 1"))
    out.append(script("sos_two", "unsat", [x, y], ["(< (+ (* x x) (* y y)) 0)"], note="sum of squares"))
    out.append(script("sos_two_zero", "sat", [x, y], ["(<= (+ (* x x) (* y y)) 0)"], note="zero at the origin"))
    out.append(script("sos_shift_sat", "sat", [x, y],
                      [f"(= (+ {sq('(- (* x y) 1)')} {sq('(- x y)')}) 0)"],
                      note="zero at x = y = 1"))
    out.append(script("sos_shift_unsat", "unsat", [x, y],
                      [f"(= (+ {sq('(- (* x y) 1)')} {sq('(+ x y)')}) 0)"],
                      note="x = -y forces -x^2 = 1"))
    out.append(script("amgm_two", "unsat", [x, y],
                      ["(> x 0)", "(> y 0)", f"(< {sq('(+ x y)')} (* 4 x y))"],
                      note="(x + y)^2 - 4xy = (x - y)^2"))
    out.append(script("amgm_two_eq", "sat", [x, y],
                      ["(> x 0)", "(> y 0)", f"(<= {sq('(+ x y)')} (* 4 x y))"],
                      note="equality at x = y"))
    out.append(script("product_bound", "unsat", ["x", "y", "z"],
                      ["(< (+ (* x x) (* y y) (* z z)) 1)", "(> (* x y z) 1)"],
                      note="all |coordinates| < 1 so |xyz| < 1"))
    out.append(script("product_bound_sat", "sat", ["x", "y", "z"],
                      ["(< (+ (* x x) (* y y) (* z z)) 4)", "(> (* x y z) (/ 1 2))"],
                      note="x = y = z = 0.9 works"))
    out.append(script("quartic_two", "unsat", [x, y],
                      ["(< (+ (* x x x x) (* y y y y) (* (- 2) x x y y)) 0)"],
                      note="x^4 + y^4 - 2x^2y^2 = (x^2 - y^2)^2"))
    out.append(script("cauchy_schwarz", "unsat", ["a", "b", "c", "d"],
                      ["(> (* (+ (* a c) (* b d)) (+ (* a c) (* b d))) (* (+ (* a a) (* b b)) (+ (* c c) (* d d))))"],
                      note="Cauchy-Schwarz in two dimensions"))
    out.append(script("xy_positive_parab", "sat", [x, y],
                      ["(> (* x y) 1)", "(< y (* x x))", "(> x 0)"],
                      note="x = 2, y = 1"))
    out.append(script("xy_sign", "unsat", [x, y],
                      ["(> (* x y) 0)", "(< x 0)", "(> y 0)"],
                      note="opposite signs give a negative product"))
    return out


def roots():
    out = []
    out.append(script("root_sqrt2_cube", "unsat", ["x", "y"],
                      ["(= (* x x) 2)", "(= y (* x x x))", "(> y 3)"],
                      note="y = +-2 sqrt 2 and 2 sqrt 2 < 3"))
    out.append(script("root_sqrt2_cube_sat", "sat", ["x", "y"],
                      ["(= (* x x) 2)", "(= y (* x x x))", f"(> y {num(Fraction(28, 10))})"],
                      note="y = 2 sqrt 2 = 2.828..."))
    out.append(script("root_two_sqrts_distinct", "sat", ["x", "y"],
                      ["(= (* x x) 2)", "(= (* y y) 2)", "(not (= x y))"],
                      note="x = sqrt 2, y = -sqrt 2"))
    out.append(script("root_scaled", "sat", ["x", "y"],
                      ["(= (* x x) 2)", "(= (* y y) 8)", "(= y (* 2 x))", "(< x 0)"],
                      note="y = 2x = -2 sqrt 2"))
    out.append(script("root_scaled_bad", "unsat", ["x", "y"],
                      ["(= (* x x) 2)", "(= (* y y) 8)", "(= y (* 3 x))"],
                      note="9x^2 = 18 != 8"))
    out.append(script("root_sum_sqrt", "sat", ["x", "y", "z"],
                      ["(= (* x x) 2)", "(= (* y y) 3)", "(= z (+ x y))", "(> x 0)", "(> y 0)",
                       f"(> z {num(Fraction(314, 100))})", f"(< z {num(Fraction(315, 100))})"],
                      note="sqrt 2 + sqrt 3 = 3.146..."))
    out.append(script("root_sum_sqrt_bad", "unsat", ["x", "y", "z"],
                      ["(= (* x x) 2)", "(= (* y y) 3)", "(= z (+ x y))", "(> x 0)", "(> y 0)",
                       f"(> z {num(Fraction(315, 100))})"],
                      note="sqrt 2 + sqrt 3 = 3.146... < 3.15"))
    return out


def roots_fixed():
    out = []
    out.append(script("root_cuberoot_order_pos", "unsat", ["x", "y"],
                      ["(= (* x x x) 2)", "(= (* y y) 2)", "(> y 0)", "(> x y)"],
                      note="2^(1/3) = 1.26 < 1.414 = 2^(1/2)"))
    out.append(script("root_cuberoot_order_sat", "sat", ["x", "y"],
                      ["(= (* x x x) 2)", "(= (* y y) 2)", "(> y 0)", "(< x y)"],
                      note="2^(1/3) < 2^(1/2)"))
    out.append(script("root_golden", "sat", ["x", "y"],
                      ["(= (* x x) (+ x 1))", "(= (* y x) 1)", "(= (- x y) 1)"],
                      note="phi - 1/phi = 1 for both roots of x^2 = x + 1"))
    out.append(script("root_golden_bad", "unsat", ["x", "y"],
                      ["(= (* x x) (+ x 1))", "(= (* y x) 1)", "(= (+ x y) 1)"],
                      note="x + 1/x = 1 has no real solution"))
    out.append(script("root_quartic_chain", "sat", ["x", "y", "z"],
                      ["(= (* x x) 2)", "(= (* y y) x)", "(= (* z z) y)", "(> z 1)"],
                      note="z = 2^(1/8) = 1.09"))
    out.append(script("root_quartic_chain_bad", "unsat", ["x", "y", "z"],
                      ["(= (* x x) 2)", "(= (* y y) x)", "(= (* z z) y)", f"(> z {num(Fraction(11, 10))})"],
                      note="z <= 2^(1/8) = 1.0905 < 1.1"))
    out.append(script("root_tangent", "sat", ["x", "y"],
                      ["(= y (* x x))", "(= y (- (* 2 x) 1))"],
                      note="line tangent to the parabola at (1, 1)"))
    out.append(script("root_tangent_strict", "unsat", ["x", "y"],
                      ["(< y (* x x))", "(> y (- (* 2 x) 1))", "(= x 1)"],
                      note="at x = 1 both bounds equal 1"))
    out.append(script("root_cusp", "sat", ["x", "y"],
                      ["(= (* y y) (* x x x))", "(> x 0)", "(< y 0)"],
                      note="x = 1, y = -1"))
    out.append(script("root_cusp_bad", "unsat", ["x", "y"],
                      ["(= (* y y) (* x x x))", "(< x 0)"],
                      note="x^3 = y^2 >= 0"))
    return out


def boolean():
    out = []
    out.append(script("bool_split_unsat", "unsat", ["x"],
                      ["(or (> x 1) (< x (- 1)))", "(< (* x x) 1)"],
                      note="either branch gives x^2 > 1"))
    out.append(script("bool_split_sat", "sat", ["x"],
                      ["(or (> x 1) (< x (- 1)))", "(< (* x x) 4)"],
                      note="x = 3/2"))
    out.append(script("bool_impl_unsat", "unsat", ["x"],
                      ["(=> p (> x 2))", "(=> (not p) (< x (- 2)))", "(< (* x x) 4)"], bools=["p"],
                      note="both branches force x^2 > 4"))
    out.append(script("bool_impl_sat", "sat", ["x"],
                      ["(=> p (> x 2))", "(=> (not p) (< x (- 2)))", "(< (* x x) 9)"], bools=["p"],
                      note="p with x = 5/2"))
    out.append(script("bool_xor", "sat", ["x", "y"],
                      ["(xor (> x 0) (> y 0))", "(> (* x y) (- 1))", "(< (* x y) 0)"],
                      note="x = 1/2, y = -1/2"))
    out.append(script("bool_xor_unsat", "unsat", ["x", "y"],
                      ["(xor (> x 0) (> y 0))", "(> (* x y) 0)", "(distinct x 0)", "(distinct y 0)"],
                      note="exactly one positive and both nonzero means xy < 0"))
    out.append(script("bool_ite", "sat", ["x"],
                      ["(ite p (= (* x x) 2) (= (* x x) 3))", "(> x (/ 3 2))"], bools=["p"],
                      note="not p with x = sqrt 3"))
    out.append(script("bool_ite_unsat", "unsat", ["x"],
                      ["(ite p (= (* x x) 2) (= (* x x) 3))", "(> x 2)"], bools=["p"],
                      note="both branches give |x| < 2"))
    out.append(script("bool_pigeon", "unsat", ["x", "y", "z"],
                      ["(or (< x 0) (> x 1))", "(or (< y 0) (> y 1))", "(or (< z 0) (> z 1))",
                       "(and (>= (* x (- 1 x)) 0) (>= (* y (- 1 y)) 0))"],
                      note="x(1-x) >= 0 forces 0 <= x <= 1"))
    out.append(script("bool_many_cases", "sat", ["x", "y"],
                      ["(or (and (> x 0) (> y 0)) (and (< x 0) (< y 0)))",
                       "(or (= (+ (* x x) (* y y)) 2) (= (+ (* x x) (* y y)) 8))",
                       "(= x y)", "(< x (- 1))"],
                      note="x = y = -2"))
    out.append(script("bool_many_cases_unsat", "unsat", ["x", "y"],
                      ["(or (and (> x 0) (> y 0)) (and (< x 0) (< y 0)))",
                       "(or (= (+ (* x x) (* y y)) 2) (= (+ (* x x) (* y y)) 8))",
                       "(= x (- y))"],
                      note="same-sign cases contradict x = -y unless both zero, which misses both circles"))
    out.append(script("bool_let", "unsat", ["x", "y"],
                      ["(let ((s (+ (* x x) (* y y)))) (and (< s 1) (> (+ x y) 2)))"],
                      note="|x + y| <= sqrt(2 s) < sqrt 2"))
    out.append(script("bool_let_sat", "sat", ["x", "y"],
                      ["(let ((s (+ (* x x) (* y y)))) (and (< s 4) (> (+ x y) 2)))"],
                      note="x = y = 1.1"))
    out.append(script("bool_eq_bool", "sat", ["x"],
                      ["(= p (> x 0))", "(= q (< x 1))", "(and p q)"], bools=["p", "q"],
                      note="x = 1/2"))
    out.append(script("bool_eq_bool_unsat", "unsat", ["x"],
                      ["(= p (> (* x x) 4))", "(= q (< x 1))", "(and p q (> x 0))"], bools=["p", "q"],
                      note="x > 0 and x^2 > 4 means x > 2, contradicting x < 1"))
    return out


def three_var():
    out = []
    for i, c in enumerate([0, 1, Fraction(3, 2), 2, Fraction(17, 10), Fraction(9, 5)]):
        st = "sat" if Fraction(c) ** 2 <= 3 else "unsat"
        out.append(script(f"sphere_plane_{i}", st, ["x", "y", "z"],
                          ["(= (+ (* x x) (* y y) (* z z)) 1)", f"(= (+ x y z) {num(c)})"],
                          note="plane x + y + z = c meets the unit sphere iff c^2 <= 3"))
    out.append(script("paraboloid_plane", "sat", ["x", "y", "z"],
                      ["(= z (+ (* x x) (* y y)))", "(= z 1)", "(> x y)"],
                      note="x = 1, y = 0"))
    out.append(script("paraboloid_below", "unsat", ["x", "y", "z"],
                      ["(= z (+ (* x x) (* y y)))", "(< z 0)"],
                      note="sum of squares"))
    out.append(script("three_products", "sat", ["x", "y", "z"],
                      ["(= (* x y) 2)", "(= (* y z) 3)", "(= (* x z) 6)"],
                      note="x = 2, y = 1, z = 3"))
    out.append(script("three_products_bad", "unsat", ["x", "y", "z"],
                      ["(= (* x y) 2)", "(= (* y z) 3)", "(= (* x z) (- 6))"],
                      note="(xyz)^2 = 2 * 3 * (-6) < 0"))
    out.append(script("cylinder_line", "sat", ["x", "y", "z"],
                      ["(= (+ (* x x) (* y y)) 1)", "(= x z)", "(= y z)"],
                      note="2z^2 = 1"))
    out.append(script("twisted_cubic", "sat", ["x", "y", "z"],
                      ["(= y (* x x))", "(= z (* x x x))", "(= (+ x y z) 3)"],
                      note="x = 1"))
    out.append(script("twisted_cubic_bad", "unsat", ["x", "y", "z"],
                      ["(= y (* x x))", "(= z (* x y))", "(< z 0)", "(> x 0)"],
                      note="x > 0 gives z = x^3 > 0"))
    return out


def families():
    return univariate() + circle_line() + circle_circle() + positivity() + roots() + roots_fixed() \
        + boolean() + three_var()


def main() -> None:
    OUT.mkdir(parents=True, exist_ok=True)
    for old in OUT.glob("*.smt2"):
        old.unlink()
    items = families()
    names = [n for n, _, _ in items]
    assert len(names) == len(set(names)), "duplicate instance names"
    for name, _, text in items:
        (OUT / f"{name}.smt2").write_text(text)
    sat = sum(1 for _, s, _ in items if s == "sat")
    print(f"wrote {len(items)} instances ({sat} sat, {len(items) - sat} unsat) to {OUT}")


if __name__ == "__main__":
    main()
