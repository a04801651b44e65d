from hypothesis import strategies as st

from orientlab import Digraph


@st.composite
def digraphs(draw, min_n=0, max_n=9):
    n = draw(st.integers(min_n, max_n))
    pairs = [(u, v) for u in range(n) for v in range(n) if u != v]
    chosen = draw(st.lists(st.sampled_from(pairs), unique=True)) if pairs else []
    return Digraph(n, chosen)


words = st.text(alphabet="FB", min_size=2, max_size=8)
