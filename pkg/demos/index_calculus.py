"""The doubled surface index, its invariance under cutting and the fat-graph sum."""

import random

from tanglesurg.surface_index import (
    SurfacePiece,
    cut_along,
    cut_labels,
    fat_graph_index_sum,
    index,
    random_torus_fat_graph,
)

disk = SurfacePiece(1, {"Q": 2})
print("disk meeting Q in two arcs, doubled index:", index(disk, "Q"))
cut = cut_along(disk, "X", 1)
print("after cutting along X once:", cut, "index", index(cut, {"Q", *cut_labels("X")}))

rng = random.Random(1)
graphs = [random_torus_fat_graph(rng) for _ in range(5)]
for g in graphs:
    print(f"fat graph with {g.vertex_count} vertices and {len(g.faces)} faces: index sum {fat_graph_index_sum(g)}")
