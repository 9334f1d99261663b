"""Hand-built graphs shared by several test modules."""
from cyclestab.graph import make_graph


def r3_blob_graph():
    """Edge 0-1 plus four triangles, every triangle vertex joined to both 0 and 1."""
    edges = [(0, 1)]
    for b in range(4):
        blob = [2 + 3 * b + i for i in range(3)]
        edges += [(blob[0], blob[1]), (blob[0], blob[2]), (blob[1], blob[2])]
        edges += [(x, y) for x in blob for y in (0, 1)]
    return make_graph(14, edges)
