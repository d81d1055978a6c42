"""Derivation heights of the counter systems R_k and of bin."""

from popstar.generators import family
from popstar.rewriting import derivation_height, rc_fit

for name, n in (("rk:1", 30), ("rk:2", 25), ("rk:3", 15), ("mul", 20), ("dc", 20)):
    fam = family(name)
    fit = rc_fit(fam.trs(), fam.start, n)
    print(f"{name:5} slope(depth)={fit.slope:.2f} slope(n)={fit.slope_n:.2f} "
          f"heights[-3:]={fit.heights[-3:]}")

fam = family("bin")
trs = fam.trs()
for n in range(11):
    h = derivation_height(fam.start(n), trs).height
    print(f"bin n={n:2} height={h:5} 2^n={2 ** n:5}")
