"""The two worked similarity systems: closed forms vs enumerated loops.

For similarity generators the vertex pressure has a closed form
(geometric loop families), so they make an end-to-end check of the loop
enumeration, the tail bookkeeping, and the dimension bisection: the
enumerated enclosure must contain the closed form, and the Bowen roots
of the cycle system and its vertex systems must agree.
"""

import math
from fractions import Fraction as F

from nicfdim import appendix_example, dim_interval, first_return_loops

ap = appendix_example("cycle4", {e: F(1, 3) for e in (1, 2, 3, 4)})
print("== cycle graph, all edge ratios 1/3 ==")
loops = first_return_loops(ap.graph, "v", 9)
print("loops at v up to length 9:",
      ["".join(map(str, w)) for ws in loops.values() for w in ws])

for t in (F(1, 8), F(1, 4)):
    closed = ap.closed_pressure("v", t, bits=128)
    enc = ap.enumerated_pressure("v", t, 30)
    print(f"  t={t}: closed P_v in [{float(closed.lo):+.10f}, {float(closed.hi):+.10f}]")
    print(f"         enumerated  [{float(enc.lo):+.10f}, {float(enc.hi):+.10f}]"
          f"  contains closed: {enc.lo <= closed.lo and closed.hi <= enc.hi}")

lo, hi = F(0), F(1)
for _ in range(60):
    mid = (lo + hi) / 2
    if mid ** 3 + mid ** 2 < 1:
        lo = mid
    else:
        hi = mid
h = math.log(float((lo + hi) / 2)) / math.log(1 / 3)
print(f"algebraic Bowen root (u^3 + u^2 = 1): h = {h:.6f}")
for vertex in ("v", "w"):
    di = dim_interval(ap.vertex_ifs(vertex), 6, F(1, 2000))
    print(f"  dim of the vertex-{vertex} system in "
          f"[{float(di.lo):.6f}, {float(di.hi):.6f}]")
print()

ap2 = appendix_example("triangle6", {e: F(1, 4) for e in "abcdef"})
print("== triangle graph, all edge ratios 1/4 ==")
loops = first_return_loops(ap2.graph, "v", 7)
print("loops at v up to length 7:",
      sorted("".join(w) for ws in loops.values() for w in ws))
t = F(1, 2)
closed = ap2.closed_pressure("v", t, bits=128)
enc = ap2.enumerated_pressure("v", t, 24)
print(f"  t={t}: closed in [{float(closed.lo):+.8f}, {float(closed.hi):+.8f}],"
      f" contained in enumerated: {enc.lo <= closed.lo and closed.hi <= enc.hi}")
