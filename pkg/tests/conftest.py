import hypothesis
from hypothesis import strategies as st

from tamcox.trees import LEAF, node

hypothesis.settings.register_profile(
    "ci", deadline=None, derandomize=True, max_examples=60
)
hypothesis.settings.load_profile("ci")


def trees(max_size: int = 5):
    """Hypothesis strategy for binary trees of bounded size."""
    return st.recursive(
        st.just(LEAF),
        lambda children: st.builds(node, children, children),
        max_leaves=max_size + 1,
    ).filter(lambda t: t.size <= max_size)
