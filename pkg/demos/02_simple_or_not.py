# %% [markdown]
# # Three ways to decide that a closed geodesic is simple
#
# 1. a translate of a chain corner lands inside the chain (lozenge search),
# 2. a translate of the endpoint pair is linked with it (circle search),
# 3. a conjugate axis crosses the axis (brute force in the upper half plane).
#
# All three are semi-decisions stamped with the enumeration depth.

# %%
import time

from orbitspace.cocylinder import find_linking_witness, self_intersection_oracle
from orbitspace.groups import modular_torus
from orbitspace.hyperbolic import format_word, parse_word
from orbitspace.lozenges import chain_of_element, simplicity_check

G = modular_torus()
words = ["a", "ab", "aB", "aabab", "aabb", "abAb", "aaabb", "aaaBBB"]

# %%
t0 = time.perf_counter()
for w in words:
    g = G.element(parse_word(w, 2))
    cert = simplicity_check(chain_of_element(g), G, 8)
    link = find_linking_witness(g, G, 10)
    n = self_intersection_oracle(g, G, 8)
    witness = format_word(cert.witness.element.word) if cert.witness else "-"
    print(f"{w:8s} lozenge={cert.verdict:18s} witness={witness:6s} linking={link.verdict:12s} crossings>={n}")
print(f"{time.perf_counter() - t0:.1f} s")

# %% [markdown]
# The curve a^m b^n on the punctured torus is known to have (m-1)(n-1)
# self-intersections, which the oracle reproduces.

# %%
for m in range(1, 4):
    print([self_intersection_oracle(G.element(parse_word("a" * m + "b" * n, 2)), G, 8) for n in range(1, 4)])
