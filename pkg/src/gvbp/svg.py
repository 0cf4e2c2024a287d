"""Static SVG picture of a packing, bins laid out left to right."""
from __future__ import annotations

from .model import BinPacking, Instance

_PALETTE = ("#8dd3c7", "#ffffb3", "#bebada", "#fb8072", "#80b1d3",
            "#fdb462", "#b3de69", "#fccde5", "#d9d9d9", "#bc80bd")


def packing_svg(instance: Instance, packing: BinPacking, scale: int = 200, gap: int = 20) -> str:
    width = packing.bin_count * (scale + gap) + gap
    height = scale + 2 * gap
    out = [f'<svg xmlns="http://www.w3.org/2000/svg" width="{width}" height="{height}">']
    for b in range(packing.bin_count):
        x0 = gap + b * (scale + gap)
        out.append(f'<rect x="{x0}" y="{gap}" width="{scale}" height="{scale}" '
                   'fill="white" stroke="black"/>')
    for k, p in enumerate(packing.placements):
        it = instance.item(p.item_id)
        x0 = gap + p.bin_index * (scale + gap)
        # SVG y grows downwards; bins are drawn with the origin at the bottom
        x = x0 + float(p.x) * scale
        y = gap + (1 - float(p.y) - float(it.height)) * scale
        w, h = float(it.width) * scale, float(it.height) * scale
        if w == 0 or h == 0:
            out.append(f'<circle cx="{x:.2f}" cy="{y + h:.2f}" r="2" fill="black">'
                       f'<title>{it.id}</title></circle>')
            continue
        out.append(f'<rect x="{x:.2f}" y="{y:.2f}" width="{w:.2f}" height="{h:.2f}" '
                   f'fill="{_PALETTE[k % len(_PALETTE)]}" stroke="black">'
                   f'<title>{it.id}</title></rect>')
    out.append("</svg>")
    return "\n".join(out) + "\n"


def write_svg(instance: Instance, packing: BinPacking, path) -> None:
    with open(path, "w") as fh:
        fh.write(packing_svg(instance, packing))
