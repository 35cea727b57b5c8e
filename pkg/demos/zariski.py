"""Six cusps on a conic: the classical irregular sextic.

Builds g^3 + f^2 for the conic xz = y^2 and a cubic through six of its
rational points, then walks through the pieces of the computation.
"""
from multiplane import io
from multiplane.benchmarks import zariski_sextic
from multiplane.irregularity import irregularity, profile, scheme
from multiplane.multiplier import jumping_numbers

curve = zariski_sextic()
print("degree", curve.degree, "with", len(curve.singular_points), "cusps")
for pt in curve.singular_points:
    print("  ", pt.location, pt.type.label)

cusp = curve.singular_points[0].type
print("jumping numbers of a cusp:", [str(j.value) for j in jumping_numbers(cusp)])

# at xi = 5/6 the multiplier scheme is the reduced set of cusps
for pt, k in scheme(curve, jumping_numbers(cusp)[0].value)[:2]:
    print("  cluster at", pt.location, "weights", k.weights)

rep = irregularity(curve, 6)
for t in rep.terms:
    print(f"xi = {t.xi}: conics through the cusps, h0 = {t.h0}, h1 = {t.h1}")
print("q at n = 6:", rep.q)
print("profile:", profile(curve, 12))

with open("zariski_sextic.curve", "w") as fh:
    fh.write(io.dumps(io.curve_to_json(curve), pretty=True))
print("wrote zariski_sextic.curve; try: multiplane irregularity zariski_sextic.curve --n 6")
