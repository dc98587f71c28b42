"""Hand-emitted SVG bar charts; diagnostic output, no plotting dependency."""

from __future__ import annotations

from xml.sax.saxutils import escape

CLASS_COLORS = {
    "I": "#9aa0a6",
    "II": "#e8a33d",
    "III": "#d23f31",
    "IV": "#3c78d8",
    "": "#3c78d8",
}

_WIDTH, _HEIGHT = 900, 320
_MARGIN_LEFT, _MARGIN_BOTTOM, _MARGIN_TOP = 50, 30, 30


def bar_chart(values, classes=None, title: str = "") -> str:
    """One rect per value, colored by event class, tallest bar at full height.

    Returns the SVG document as a string; the number of ``class="bar"``
    rects always equals ``len(values)``.
    """
    values = [float(v) for v in values]
    classes = list(classes) if classes is not None else [""] * len(values)
    if len(classes) != len(values):
        raise ValueError("need one class label per value")
    top = max(values, default=0.0)
    scale = (_HEIGHT - _MARGIN_BOTTOM - _MARGIN_TOP) / top if top > 0 else 0.0
    plot_width = _WIDTH - _MARGIN_LEFT - 10
    slot = plot_width / max(len(values), 1)
    bar_width = max(slot * 0.8, 0.5)

    parts = [
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{_WIDTH}" height="{_HEIGHT}" '
        f'viewBox="0 0 {_WIDTH} {_HEIGHT}">',
        f'<text x="{_MARGIN_LEFT}" y="18" font-size="13" font-family="sans-serif">'
        f"{escape(title)}</text>",
        f'<line x1="{_MARGIN_LEFT}" y1="{_HEIGHT - _MARGIN_BOTTOM}" x2="{_WIDTH - 10}" '
        f'y2="{_HEIGHT - _MARGIN_BOTTOM}" stroke="#444" stroke-width="1"/>',
        f'<line x1="{_MARGIN_LEFT}" y1="{_MARGIN_TOP}" x2="{_MARGIN_LEFT}" '
        f'y2="{_HEIGHT - _MARGIN_BOTTOM}" stroke="#444" stroke-width="1"/>',
        f'<text x="4" y="{_MARGIN_TOP + 8}" font-size="11" font-family="sans-serif">'
        f"{top:.3g}</text>",
    ]
    baseline = _HEIGHT - _MARGIN_BOTTOM
    for i, (value, label) in enumerate(zip(values, classes)):
        height = value * scale
        x = _MARGIN_LEFT + i * slot + (slot - bar_width) / 2
        color = CLASS_COLORS.get(label, CLASS_COLORS[""])
        parts.append(
            f'<rect class="bar" x="{x:.2f}" y="{baseline - height:.2f}" '
            f'width="{bar_width:.2f}" height="{height:.2f}" fill="{color}"/>'
        )
    legend_x = _WIDTH - 220
    for i, (label, color) in enumerate(c for c in CLASS_COLORS.items() if c[0]):
        parts.append(
            f'<rect x="{legend_x + i * 52}" y="8" width="10" height="10" fill="{color}"/>'
            f'<text x="{legend_x + 14 + i * 52}" y="17" font-size="11" '
            f'font-family="sans-serif">{label}</text>'
        )
    parts.append("</svg>")
    return "\n".join(parts)


def figure_order(verdicts):
    """Display order for verdict rows: classes I, II, III first, then the
    transmitted events by increasing probability."""
    def key(item):
        idx, v = item
        rank = {"I": 0, "II": 1, "III": 2}.get(v.event_class.value if v.event_class else "", 3)
        prob = v.p_boson if v.p_boson is not None else (
            v.p_fermion if v.p_fermion is not None else (v.p_dist or 0.0)
        )
        return (rank, prob if rank == 3 else idx)
    return [idx for idx, _ in sorted(enumerate(verdicts), key=key)]


def write_verdict_svg(path, verdicts, title: str = "") -> None:
    order = figure_order(verdicts)
    values = []
    classes = []
    for idx in order:
        v = verdicts[idx]
        prob = v.p_boson if v.p_boson is not None else (
            v.p_fermion if v.p_fermion is not None else (v.p_dist or 0.0)
        )
        values.append(prob)
        classes.append(v.event_class.value if v.event_class else "")
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        fh.write(bar_chart(values, classes, title))
        fh.write("\n")
