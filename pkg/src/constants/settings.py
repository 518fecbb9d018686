"""Numeric defaults for the road, sensor, detector and harness."""

# --- Road ---
DEFAULT_LANE_WIDTH_M = 3.75
DEFAULT_DASH_LEN_M = 6.0
DEFAULT_GAP_LEN_M = 12.0
DEFAULT_DOT_LEN_M = 3.0
DEFAULT_DOT_GAP_M = 3.0
DEFAULT_VEHICLE_WIDTH_M = 1.9
MARKING_SAMPLE_STEP_M = 0.05
JOINT_TOLERANCE_M = 1e-9

# Minimum curve radius per design speed (km/h → m), recommended radius above all speeds
MIN_CURVE_RADIUS_BY_SPEED = {130: 800.0, 120: 600.0, 110: 500.0, 100: 400.0}
RECOMMENDED_CURVE_RADIUS_M = 1000.0

# --- Line sensor ---
DEFAULT_LD_RANGE_M = 200.0
DEFAULT_DX_M = 2.0
DEFAULT_NEAR_OFFSET_M = 5.52
DEFAULT_MAX_LINES = 100
DEFAULT_MAX_POINTS_PER_LINE = 200
DEFAULT_LATERAL_WINDOW_M = 15.0
DEFAULT_NOISE_SIGMA_M = 0.0
DEFAULT_NOISE_SEED = 0
LEGACY_POINT_LIST_SIZE = 30

# --- ALDM ---
DEFAULT_MAX_GAP_M = 18.0
DEFAULT_SEED_MAX_X_M = DEFAULT_MAX_GAP_M + DEFAULT_NEAR_OFFSET_M
DEFAULT_SEED_MIN_SEPARATION_M = 1.8
DEFAULT_MIN_PREVIEW_M = 60.0
DEFAULT_ADJACENT_MIN_LATERAL_M = 2.0
DEFAULT_OUTPUT_POINTS = 13
RESIDUAL_TIE_TOLERANCE_M = 1e-9
GRID_TOLERANCE_M = 1e-6

# --- Trajectory ---
CENTER_SAMPLES = 13
CUBIC_MIN_POINTS = 4

# --- Harness ---
REPORT_SCHEMA_VERSION = 1
DEFAULT_FRAME_WORKERS = 1
GROUND_TRUTH_STEP_M = 1.0
WORST_DASH_MARGIN_M = 0.01

# --- Plots ---
PLOT_LATERAL_RANGE_M = (-15.0, 11.0)
PLOT_LONGITUDINAL_RANGE_M = (0.0, 200.0)
PLOT_WIDTH_PX = 520
PLOT_HEIGHT_PX = 800
