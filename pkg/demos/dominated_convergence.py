"""Tour of the dominated convergence inequality and the metastable rate search.

Run with:  python3 demos/dominated_convergence.py
"""

import random
from fractions import Fraction as F

from metastable import (
    DirectedFamily,
    MeasureStructure,
    Periodic,
    RateSpec,
    SequenceSpec,
    affine_sampling,
    dct_inequality_check,
    integral_sequence,
    metastable_dct_search,
    monotone_uniform_rate,
    uniform_rate_audit,
)
from metastable.generators import monotone_slice_class, random_coherent_family

eta = affine_sampling(1)

# ---------------------------------------------------------------------------
# A directed family: a positive measure plus one tail-structured sequence
# per sample point.  The induced integral sequence j -> I(phi_j) inherits
# the tail structure, so its oscillation is exact.

fam = DirectedFamily(
    measure=MeasureStructure(("w1", "w2"),
                             {"w1": F(1, 2), "w2": F(1, 2)}, "probability"),
    slices={
        "w1": SequenceSpec(prefix=(1, -1), tail=Periodic(2)),
        "w2": SequenceSpec(prefix=(-1, 1), tail=Periodic(2)),
    },
)
iseq = integral_sequence(fam)
print("slices oscillate between 1 and -1 in opposite phase;")
print("integral sequence:", [str(iseq.value(j)) for j in range(6)])

check = dct_inequality_check(fam)
print(f"osc(I phi) = {check.lhs} <= {check.rhs} = "
      f"norm(mu) * sup osc(slices): {check.holds}")

# The inequality is a theorem; it holds on every random family.
rng = random.Random(0)
assert all(dct_inequality_check(random_coherent_family(rng)).holds
           for _ in range(200))
print("holds on 200 random families")

# ---------------------------------------------------------------------------
# The metastable form: from a rate valid for every slice, derive a rate for
# the integral sequences of a whole class by exhaustive search, then check
# it on held-out members.
#
# The class: probability measures on two points with monotone slices in
# [0,1], seeded randoms plus an adversarial core of staircases that climb
# just over epsilon at each chained window boundary.  The core pins the
# search to the rate valid for the entire class.

grid = [F(1), F(1, 2), F(1, 4)]
slice_rate = RateSpec(per_epsilon={
    eps: monotone_uniform_rate(eps, eta) for eps in grid
})
families = monotone_slice_class(eta, grid, n_random=80, seed=1)
result = metastable_dct_search(
    families, r=0, s=1, eta=eta, slice_rate=slice_rate, horizon=32,
)
for eps in grid:
    E = result.rate.per_epsilon[eps]
    guaranteed = monotone_uniform_rate(eps, eta)
    print(f"eps={eps}: searched rate 0..{max(E)}   "
          f"(slice-level rate 0..{max(guaranteed)})")

held_out = monotone_slice_class(eta, grid, n_random=150, seed=2)
integrals = [integral_sequence(f) for f in held_out]
ok = all(
    uniform_rate_audit(integrals, eps, eta, result.rate.per_epsilon[eps])
    for eps in grid
)
print("held-out validation on 150 fresh families:", "all pass" if ok else "FAIL")
