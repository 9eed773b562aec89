"""Levy-flight narrow passage sampling for probabilistic roadmap planners."""

from .cspace import (
    Configuration,
    PlanarLinkRobot,
    PointRobot,
    RigidBodyRobot3D,
    SpaceSpec,
    config,
    distance,
    forward_kinematics,
    interpolate,
    lshape_robot,
    planar_link_robot,
    sample_uniform,
    step,
    wrap_angle,
)
from .geometry import (
    CollisionCounter,
    Scene,
    in_passage,
    is_colliding,
    point_in_obstacle,
    segment_hits_scene,
)
from .heavytail import (
    HeavyTailParams,
    levy_orientation_offset,
    levy_step_length,
    sample_power_law,
    sample_unit_direction,
)
from .samplers import (
    BRIDGE_SAMPLERS,
    SAMPLERS,
    SampleBatch,
    SamplerConfig,
    extend,
    gaussian_sample,
    lfbs_sample,
    lfs_sample,
    rbbs_sample,
    rwbs_sample,
    rws_sample,
)
from .prm import (
    PlanResult,
    Roadmap,
    build_roadmap,
    extend_roadmap,
    load_roadmap,
    local_path_valid,
    parse_roadmap,
    query,
    save_roadmap,
    serialize_roadmap,
)
from .scenes import (
    BUILTIN_NAMES,
    DEFAULT_WIDTHS,
    SceneParseError,
    builtin,
    default_query,
    load_scene,
    serialize_scene,
)
from .bench import (
    BenchmarkConfig,
    BenchmarkResults,
    TrialCell,
    TrialMetrics,
    derive_trial_seed,
    emit_csv,
    emit_svg_scatter,
    make_robot_and_spec,
    run_benchmark,
    run_trial,
    run_trial_batch,
)

__version__ = "0.1.0"
