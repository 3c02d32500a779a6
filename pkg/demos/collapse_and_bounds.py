"""Collapsing a disc to a triangle, and the numbers that bound the process."""

import random

from twistnf.bounds import disc_count_bound, elementary_move_bound, format_power, reidemeister_bound
from twistnf.moves import collapse_certificate, random_disc, validate_certificate, write_certificate

disc = random_disc(12, random.Random(3))
cert = collapse_certificate(disc)
print(write_certificate(cert))
print(cert.counts())

check = validate_certificate(cert, disc)
print(bool(check), check.moves, "of", check.budget)

# Bigger discs stay well inside the 2w budget.
for w in (50, 100, 200):
    d = random_disc(w, random.Random(w))
    print(w, len(collapse_certificate(d).moves))

raw, relaxed, final = disc_count_bound(1)
print(raw.bit_length(), relaxed.bit_length(), format_power(final))
print(format_power(elementary_move_bound(1)))

for n in (1, 2, 3):
    b = reidemeister_bound(n)
    print(n, b.t, b.status, f"2^{b.final_exponent}")
