"""Settle the y^7 coefficient of the E8 elimination polynomial by brute force.

The Sylvester resultant of the two map components (minus the target) with
respect to x is computed independently of the closed form; the two agree up
to a constant, and the y^7 coefficient scales as c5 cubed.

    python3 demos/e8_coefficient.py
"""

from fractions import Fraction

from magsum import eliminate, lens_map, parse_family, resultant

spec = parse_family("E8")
s = (Fraction(1, 4), Fraction(-2, 5))
for c5 in [Fraction(1, 2), Fraction(2), Fraction(-3)]:
    c = (Fraction(1, 2), Fraction(-1), Fraction(1, 3), Fraction(2), c5)
    f1, f2 = lens_map(spec, c)
    res = resultant(f1 - s[0], f2 - s[1], "x")
    scale = res.lc / 75
    print(f"c5 = {str(c5):>4s}:  y^7 coefficient / scale = {res[7] / scale}"
          f"   9 c5^3 = {9 * c5 ** 3}   9 c5 = {9 * c5}")
    phi, _ = eliminate(spec, c, s)
    assert phi * scale == res
