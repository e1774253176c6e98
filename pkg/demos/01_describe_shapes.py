"""From a binary image to a curve-code descriptor.

Run with ``python3 demos/01_describe_shapes.py``.
"""

# %%
import numpy as np

from shapexml.contour import load_binary_image, resample, trace_outer_contour, write_pbm
from shapexml.corner import detect_corners
from shapexml.descriptor import to_xml
from shapexml.features import analyze_shape, describe_shape
from shapexml.synthetic import bulged_square, rasterize, transform_points

# %% A square with one side pushed outward, drawn into a 160x160 image.
outline = transform_points(bulged_square(side=100, turn_deg=85), offset=(30, 20))
img = rasterize(outline, (160, 160))
print("foreground pixels:", int(img.pixels.sum()))

# The loader reads Netpbm bytes, so a round trip through PBM is the same
# path the command line takes.
img = load_binary_image(write_pbm(img))

# %% Trace the outer boundary and resample it to 256 evenly spaced points.
raw = trace_outer_contour(img)
contour = resample(raw, 256)
print(f"traced {len(raw)} boundary pixels, perimeter {contour.perimeter:.1f} px")

# %% Corners are where the inscribed triangle gets sharp.
corners = detect_corners(contour)
for i in corners.indices:
    x, y = contour.points[i]
    print(f"corner at sample {i:3d}: ({x:6.1f}, {y:6.1f})")

# %% Each stretch between corners becomes one curve with four symbols.
_, segments, feats, codes = analyze_shape(contour)
for seg, f, code in zip(segments, feats, codes):
    print(
        f"{seg.start:3d}->{seg.end:3d}  {code.kind:2s} {code}  "
        f"chord={f.chord_len:.3f} dg={f.dg:.3f} beta={np.degrees(f.beta):5.1f}deg area={f.area:.4f}"
    )

# %% The descriptor file is plain ISO-8859-1 XML.
d = describe_shape(contour, name="bulged-square")
print(to_xml(d).decode("latin-1"))

# %% Rotating and shrinking the outline before drawing it. Curve kinds and
# most bins survive; the smaller raster is coarser, so a bin near an edge can
# move by one step.
moved = transform_points(outline, angle=0.7, scale=0.6, offset=(80, 80))
d2 = describe_shape(resample(trace_outer_contour(rasterize(moved, (200, 200))), 256))
print("original:", sorted(d.symbol_strings()))
print("moved:   ", sorted(d2.symbol_strings()))
