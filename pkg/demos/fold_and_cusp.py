"""Image counts over the source plane for the fold and the cusp, drawn as text.

    python3 demos/fold_and_cusp.py
"""

from magsum import GridSpec, map_source_plane, parse_family

GLYPH = {0: " ", 1: ".", 2: ":", 3: "#", 4: "@", -1: "?"}


def draw(name, params, lo, hi, res=36):
    rmap = map_source_plane(parse_family(name), params, GridSpec((lo, hi), (lo, hi), res))
    print(f"{name} over [{lo}, {hi}]^2, s1 to the right, s2 upwards")
    for k in reversed(range(res)):
        print("  |" + "".join(GLYPH.get(c.n_real, "*") for c in rmap.row(k)) + "|")
    print()


# the fold: two images to the right of the parabola s1 = -s2^2/3, none to the left
draw("A2", (), -2, 2)
# the cusp: three images inside the cusp-shaped wedge, one outside
draw("A3", (), -3, 3)
# the hyperbolic umbilic slice with c2 = 1/2: 0, 2 and 4 image regions
draw("D4+", (0.5,), -2, 2)
