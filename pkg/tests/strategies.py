from hypothesis import strategies as st

from dpcolor.graph import make_graph


@st.composite
def graphs(draw, max_n=6, min_n=0):
    n = draw(st.integers(min_n, max_n))
    pairs = [(u, v) for u in range(n) for v in range(u + 1, n)]
    chosen = draw(st.lists(st.sampled_from(pairs), unique=True) if pairs else st.just([]))
    return make_graph(n, chosen)
