"""Hilbert series of infinitesimal Alexander invariants.

Free groups reproduce the Chen ranks; the two-form algebra on four generators
has a finite-dimensional invariant; the W_k and R_k loci agree on random data.
"""

from __future__ import annotations

from torelli_resonance.alexander_infinitesimal import (
    chen_rank_free,
    graded_dims,
    random_crosscheck,
)
from torelli_resonance.resonance_engine import free_group_data, surface_data, two_form_data


def main():
    for n in (2, 3):
        prof = graded_dims(free_group_data(n), 4)
        print(f"F{n}: b_q = {prof.values}  Chen = {[chen_rank_free(n, q + 2) for q in range(5)]}")
    print("surface g=2:", graded_dims(surface_data(2), 3).values)
    prof = graded_dims(two_form_data(), 4)
    print("two-form:", prof.values, "vanishes from degree", prof.vanishing_degree)
    res = random_crosscheck(5, seed=1, points=10, kmax=3)
    print(f"W_k vs R_k: {res['cases']} cases, {len(res['discrepancies'])} discrepancies")


if __name__ == "__main__":
    main()
