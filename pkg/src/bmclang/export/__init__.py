"""Emitters and loaders: canonical JSON, DOT graphs, SVG canvases."""
from .dot import to_dot
from .jsonio import from_json, to_json, to_obj
from .svg import CanvasGeometry, layout_canvas, to_svg

__all__ = [
    "CanvasGeometry",
    "from_json",
    "layout_canvas",
    "to_dot",
    "to_json",
    "to_obj",
    "to_svg",
]
