"""Covers of graphs: pushing the girth of the figure-eight up, then branched
covers with prescribed local degrees, and a lift that is not a cut vertex.

    python demos/graph_covers.py
"""

from consep import Graph, build_branched_cover, build_branched_cover_noncut, is_cut_vertex, verify_branched_cover
from consep.covers import amplify_steps, rose_graph


def main():
    print("Iterated covers of the figure-eight, each killing every shortest circuit:")
    for g, gi, _ in amplify_steps(rose_graph(2), 10):
        print(f"  {g.num_vertices:6d} vertices   girth {gi}")

    path = Graph(2, ((0, 1),))
    m = build_branched_cover(path, [1, 2])
    print("\nA single edge u - v with degree 1 at u and 2 at v:")
    print(f"  {m.sheets} sheets, lifts of u: {m.vertex_map.count(0)}, lifts of v: {m.vertex_map.count(1)}, "
          f"edges: {m.source.num_edges}")

    triangle = Graph(3, ((0, 1), (1, 2), (2, 0)))
    m = build_branched_cover(triangle, [2, 3, 1])
    print("\nA triangle with degrees 2, 3, 1 (lcm 6 sheets):")
    print(verify_branched_cover(m, [2, 3, 1]).text())

    star = Graph(4, ((0, 1), (0, 2), (0, 3)))
    m = build_branched_cover_noncut(star, [1, 2, 2, 3], 0)
    w = m.marked_vertex
    print("\nThe centre of a star is a cut vertex; with degree >= 2 at every leaf some lift of it is not:")
    print(f"  lift {w} of the centre, cut vertex: {is_cut_vertex(m.source, w)}, "
          f"cover has {m.source.num_vertices} vertices")


if __name__ == "__main__":
    main()
