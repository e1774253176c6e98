"""Shape description with quantized symbol strings, XML storage and edit-distance matching."""

from .codes import CurveCode
from .contour import BinaryImage, Contour, load_binary_image, resample, trace_outer_contour
from .corner import CornerParams, CornerSet, detect_corners
from .descriptor import ShapeDescriptor, from_xml, read_descriptor, to_xml, write_descriptor
from .features import QuantizerConfig, describe_shape, heron_area
from .matching import CostModel, edit_distance, global_signature, shape_distance
from .retrieval import BenchmarkConfig, build_store, query, run_benchmark

__version__ = "0.1.0"
