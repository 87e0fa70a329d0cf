"""Walk through every family: exact trace, then the numeric images at a
maximum-image target.

    python3 demos/sum_rule_tour.py
"""

import random
from fractions import Fraction

from magsum import (
    FamilySpec,
    eliminate,
    find_max_image_witness,
    magnification_fn,
    parse_family,
    solve_images,
    trace_sum,
)

rng = random.Random(0)

# %% exact side: reduce phi' * M modulo phi and read off the top coefficient
for name in ["A2", "A5+-", "D4+", "D7-", "E6+", "E6-", "E7", "E8"]:
    spec = parse_family(name)
    c = tuple(Fraction(rng.randint(-9, 9), rng.randint(1, 9)) for _ in range(spec.n_params))
    s = (Fraction(rng.randint(1, 9), 7), Fraction(rng.randint(-9, 9), 5))
    phi, var = eliminate(spec, c, s)
    rep = trace_sum(phi, magnification_fn(spec, c, s))
    print(f"{name:5s} deg phi = {phi.degree}  m({var}) = {rep.coset_rep.to_string(var):28s}"
          f"  sum of magnifications = {rep.value}")

# %% numeric side: at a target with the maximum number of real images the
# real magnifications alone already sum to zero
print()
for spec in [FamilySpec("A", 6, (1, 1)), FamilySpec("D", 6, (-1,)), parse_family("E8")]:
    w = find_max_image_witness(spec, seed=0)
    mags = sorted(im.magnification.real for im in w.report.images)
    print(spec.name, "s =", tuple(str(v) for v in w.s))
    print("   magnifications:", " ".join(f"{m:+.4f}" for m in mags))
    print(f"   sum = {w.report.sum_real:.2e}")

# %% away from the maximum-image region only the complex total vanishes
rep = solve_images(parse_family("D5-"), (Fraction(1, 3), Fraction(-1, 2)), (Fraction(1, 2), Fraction(1, 3)))
print()
print(f"D5- with {rep.n_real} real images: real sum {rep.sum_real:+.4f}, complex sum {abs(rep.sum_all):.1e}")
