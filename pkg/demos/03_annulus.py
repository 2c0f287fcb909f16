# %% [markdown]
# # Self-intersections of the annulus between an orbit and its eta-image
#
# For a non-simple word, every group element whose lift moves the stable
# interval I = [s, u + 1] onto an overlapping interval, with linked endpoint
# pairs, is a transverse self-intersection.  None of them maps I into itself.

# %%
from collections import Counter

from orbitspace.annulus import SignProfile, build_trivialization, crossing_elements, leaf_interval, verify_claim
from orbitspace.errors import MixedSignProfile
from orbitspace.groups import modular_torus
from orbitspace.hyperbolic import format_word, parse_word

G = modular_torus()
g = G.element(parse_word("aabb", 2))
I = leaf_interval(g)
print("leaf interval", I)

# %%
arcs = crossing_elements(g, G, 8)
print(len(arcs), "arcs;", Counter(a.classification.value for a in arcs))
print("claim holds:", verify_claim(arcs))
for a in arcs[:6]:
    print(format_word(a.element.word), a.offset, a.overlap_source, a.overlap_target, a.sign_profile.value)

# %% [markdown]
# Arcs whose overlap contains a fixed point of the lift have a Mixed sign
# profile; no schedule is attempted for them.  The monotone ones can be
# placed on distinct vertical fibers.

# %%
try:
    build_trivialization(arcs, depth=8)
except MixedSignProfile as exc:
    print("refused:", exc)
monotone = [a for a in arcs if a.sign_profile is not SignProfile.MIXED]
cert = build_trivialization(monotone, depth=8)
print(len(cert.arcs), "scheduled, min gap", cert.min_gap)
