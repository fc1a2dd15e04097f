"""Hypothesis strategies shared across the test modules."""

from hypothesis import strategies as st

from valuation_lab.configurations import build_configuration, max_tangent_count


@st.composite
def configurations(draw, max_points: int = 12, min_points: int = 1):
    """Random admissible configuration with a random valid tangent segment."""
    n = draw(st.integers(min_value=min_points, max_value=max_points))
    prox: list[list[int]] = [[]]
    for i in range(2, n + 1):
        targets = [i - 1]
        if i >= 3 and draw(st.booleans()):
            targets.append(draw(st.sampled_from(sorted(prox[i - 2]))))
        prox.append(targets)
    draft = build_configuration(prox)
    if n == 1:
        return draft
    tangent = draw(st.integers(min_value=2, max_value=max_tangent_count(draft)))
    return build_configuration(prox, tangent_count=tangent)
