"""Trajectory-aware attention video super-resolution toolkit."""

from ._ttvsr import (
    AttnShape,
    LocationMapStack,
    PipelineConfig,
    WeightSet,
    attend,
    avg_pool,
    bicubic_resize,
    bilinear_sample,
    block_match_flow,
    charbonnier,
    cosine_similarity,
    cost_trajectory,
    cost_vanilla,
    cross_scale_map,
    cross_scale_tokenize,
    embed_features,
    fold,
    load_weights,
    measure_similarity_macs,
    oracle_track,
    pixel_shuffle,
    pool_flow,
    psnr,
    read_flo,
    read_png,
    reconstruct,
    run_sequence,
    save_weights,
    seeded_weights,
    select,
    ssim,
    synth_sequence,
    test_config,
    tokens_from_map_at,
    unfold,
    write_flo,
    write_png,
    zero_weights,
)

__version__ = "0.1.0"

__all__ = [
    "AttnShape",
    "LocationMapStack",
    "PipelineConfig",
    "WeightSet",
    "attend",
    "avg_pool",
    "bicubic_resize",
    "bilinear_sample",
    "block_match_flow",
    "charbonnier",
    "cosine_similarity",
    "cost_trajectory",
    "cost_vanilla",
    "cross_scale_map",
    "cross_scale_tokenize",
    "embed_features",
    "fold",
    "load_weights",
    "measure_similarity_macs",
    "oracle_track",
    "pixel_shuffle",
    "pool_flow",
    "psnr",
    "read_flo",
    "read_png",
    "reconstruct",
    "run_sequence",
    "save_weights",
    "seeded_weights",
    "select",
    "ssim",
    "synth_sequence",
    "test_config",
    "tokens_from_map_at",
    "unfold",
    "write_flo",
    "write_png",
    "zero_weights",
]
