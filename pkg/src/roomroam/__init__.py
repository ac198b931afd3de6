"""roomroam: reset-count estimation for redirected walking.

A physics-style simulator provides ground-truth reset counts for furniture
layouts; a vision-transformer regressor learns to predict them from binary
top-down images in real time; serving, statistics, and dataset tooling tie
the pipeline together.
"""

from .geometry import (
    BinaryImage,
    ConvexPoly,
    Rect,
    closest_point,
    contains,
    pgm_bytes,
    polys_overlap,
    rasterize,
    transform,
    vec2,
)
from .layout import (
    FurnitureSpec,
    InfeasibleLayoutError,
    Layout,
    LayoutError,
    PlacedObject,
    SchemaError,
    catalog,
    default_room,
    layout_from_json,
    layout_to_image,
    layout_to_json,
    place,
    rotate_layout_90,
    sample_layout,
    validate_layout,
)
from .rdwsim import (
    EpisodeResult,
    GainSet,
    ResetEstimate,
    SimConfig,
    UserState,
    apf_force,
    check_and_reset,
    estimate_resets,
    run_episode,
    select_gains,
    step,
)
from .dataset import (
    Sample,
    analyze,
    augment,
    build_dataset,
    read_dataset,
    split,
    write_dataset,
)
from .stats import StatsReport, kruskal_wallis, levene
from .model import (
    ModelConfig,
    ModelParams,
    Prediction,
    VIT_B16,
    attention_rollout,
    backward,
    count_params,
    deserialize,
    forward,
    import_pretrained,
    init_params,
    load_model,
    predict,
    save_model,
    serialize,
)
from .training import (
    EpochStats,
    Metrics,
    TrainConfig,
    evaluate,
    one_cycle_lr,
    train,
)

__version__ = "0.1.0"
