"""Build a small layered hypergraph by hand and walk through the read API.

Vertices are always 0..n-1.  Layers hold one edge family per uniformity,
so a single object can carry pair edges next to triple edges; most
algorithms here lean on that mixed view.
"""

from hyperind import LayeredHypergraph, write_file, read_file

H = LayeredHypergraph(8, 3)
H.add_edge((0, 1))
H.add_edge((0, 1, 2))
H.add_edge((1, 2, 3))
H.add_edge((4, 5, 6))

print("layers:", {i: len(es) for i, es in H.layers.items()})
print("deg({1}):", H.deg((1,)))
print("deg({0, 1}):", H.deg((0, 1)))
print("max layer-3 degree:", H.max_min_degree(3, 1))

print("link of 1:", H.link(1))
print("ball of radius 1 around {0}:", sorted(H.neighborhood({0})))
print("distance 0 -> 3:", H.distance(0, 3))
print("distance 0 -> 7:", H.distance(0, 7))  # None: different components

ok, witness = H.is_independent((0, 2, 4, 7))
print("is {0, 2, 4, 7} independent?", ok)
ok, witness = H.is_independent((0, 1, 7))
print("is {0, 1, 7} independent?", ok, "- spans", witness)

# the file format round trips byte for byte
write_file(H, "/tmp/demo.hg")
G = read_file("/tmp/demo.hg")
print("file round trip equal:", G == H)

sub, old_to_new = H.induce([1, 2, 3, 4])
print("induced on {1, 2, 3, 4}:", {i: es for i, es in sub.layers.items() if es})
print("relabel map:", old_to_new)
