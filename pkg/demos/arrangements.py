"""Nine lines with nine triple points, and random arrangements against the triple-point bound."""
import random
from fractions import Fraction

from multiplane.benchmarks import nine_line_arrangement
from multiplane.irregularity import irregularity, triple_point_bound
from multiplane.linsys import FrameError, line_arrangement

for s in (Fraction(1), Fraction(2)):
    arr = nine_line_arrangement(s)
    print(f"s = {s}: {len(arr.multiple_points)} triple points, t_i = {arr.triple_counts}")
    print("   q for n = 2..9:", [irregularity(arr.curve, n).q for n in range(2, 10)])

rng = random.Random(3)
shown = 0
while shown < 5:
    lines = {tuple(rng.randint(-1, 1) for _ in range(3)) for _ in range(8)}
    lines = [l for l in lines if l[:2] != (0, 0)]
    # the bound needs 3 | b; keep arrangements where it says something
    if len(lines) % 3:
        continue
    try:
        arr = line_arrangement(lines)
        bound = triple_point_bound(arr, 3, check=False)
    except (FrameError, ValueError):
        continue
    if bound == 0:
        continue
    print(f"{len(lines)} lines, q = {irregularity(arr.curve, 3).q}, bound {bound}")
    shown += 1
