"""
The certificate zoo
===================

kappa never guesses: every finite answer carries a checkable certificate,
every infinite answer carries a delta-table, and anything else stays an
honest interval.  This script triggers each certificate kind once.
"""

from cuntzlab import (
    EventuallyPeriodicWord,
    GridRepresentation,
    ShiftRepresentation,
    cdim,
    gen,
    kappa,
    make_cuntz,
    make_split_series_sandwich,
    transform_sandwich,
    vector_state,
    verify_properly_infinite,
)

# 1. Minimal: the state's own defining isometry witnesses kappa = cdim.
from cuntzlab import make_prefix_code_state

w = make_prefix_code_state([(1, 2)], {(1, 2): 1}, 2)
print("word state:           kappa =", kappa(w).value, "|", kappa(w).certificate)

# 2. ShiftPeriod: states read off an eventually periodic sequence.  The
#    preperiod inflates cdim but not kappa; kappa equals the period.
x = EventuallyPeriodicWord((1,), (1, 2), 2)  # 1 then (1 2) forever
sh = vector_state(ShiftRepresentation(x), x)
print("shift state:          cdim =", cdim(sh).value, "but kappa =", kappa(sh).value,
      "|", kappa(sh).certificate)

# 3. ProperlyInfinite, proved: the grid representation's base vector
#    satisfies omega(a^l (a*)^k) = delta_{l,k} on the nose; the check
#    recomputes the whole table exactly.
g = vector_state(GridRepresentation(2), (1, 0))
kg = kappa(g)
print("grid state:           kappa =", kg.value, "|status:", kg.certificate.status)
table = verify_properly_infinite(g, cutoff=4).table
print("  delta table rows:   ", [list(map(str, row)) for row in table[:2]], "...")

# 4. EquivalentToCuntz: some constructions come with a closing equivalence.
s = make_split_series_sandwich()
ks = kappa(s)
print("series state:         kappa =", ks.value, "| from", ks.certificate.provenance,
      "| cdim keeps growing:", cdim(s, L_max=5).level_ranks)

# 5. LowerBoundOnly: a compression the engine cannot close by itself.
base = make_cuntz([1, 0])
sand = transform_sandwich(base, [(1, gen(2, 2))])
kk = kappa(sand)
print("compressed state:     kappa =", kk.value, "| interval",
      [kk.certificate.low, kk.certificate.high], "-", kk.certificate.note)

# ... unless the user certifies the equivalence themselves:
sand2 = transform_sandwich(base, [(1, gen(2, 2))], equivalent_to_cuntz=[1, 0])
k2 = kappa(sand2)
print("with user statement:  kappa =", k2.value, "| provenance", k2.certificate.provenance)
