"""Mask-cued multi-object tracking: IoU association fused with segmentation cues."""

from ._mcbyte import (
    ParseError,
    evaluate_files,
    generate_scenario,
    iou,
    mask_ratios,
    preset_names,
    rle_decode,
    rle_encode,
    solve_assignment,
    track_file,
)

__all__ = [
    "ParseError",
    "evaluate_files",
    "generate_scenario",
    "iou",
    "mask_ratios",
    "preset_names",
    "rle_decode",
    "rle_encode",
    "solve_assignment",
    "track_file",
]
