# %% [markdown]
# # The strip model and chains of lozenges
#
# Orbits of the geodesic flow on the modular torus, drawn as points of the
# strip s - 1 < u < s.  We pick a closed geodesic, find its orbit point, and
# look at the chain of lozenges generated by eta.

# %%
from orbitspace.groups import modular_torus
from orbitspace.hyperbolic import axis_endpoints, format_word, parse_word
from orbitspace.lozenges import check_stabilized, chain_of_element
from orbitspace.orbit_space import act, double_class, eta, orbit_of_element

G = modular_torus()
g = G.element(parse_word("ab", 2))
print("matrix", g.matrix, "trace", g.trace)

# %% [markdown]
# The axis endpoints are the attracting (forward) and repelling (backward)
# ideal points.  The orbit point has s at the attracting end.

# %%
att, rep = axis_endpoints(g)
o, ghat = orbit_of_element(g)
print("attracting", att.angle, "repelling", rep.angle)
print("orbit point", o)
print("lift fixes it:", act(ghat, o).distance(o))

# %% [markdown]
# eta sends (u, s) to (s, u + 1); two steps are the unit diagonal shift.

# %%
print(eta(o), eta(eta(o)))

# %%
C = chain_of_element(g, 4)
for j in C.lozenge_indices:
    L = C.lozenge(j)
    print(j, "u in", L.u_range, "s in", L.s_range)
print("consecutive lozenges share no side:", C.sides_disjoint())
print("g fixes both corners of its lozenge:", check_stabilized(ghat, C.lozenge(0)))

# %% [markdown]
# The eta-iterates name only two closed orbits, the geodesic run forwards
# and backwards.

# %%
for e in double_class(g, 2):
    print(e.index, e.label, round(e.pair.a_plus.angle, 6), round(e.pair.a_minus.angle, 6))
print(format_word(g.word), "->", format_word(g.inverse().word))
