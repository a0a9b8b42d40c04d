import os


class Config(object):
    CURVE_POINTS = int(os.environ.get("RANKLASH_CURVE_POINTS", 101))
    DEFAULT_SEED = int(os.environ.get("RANKLASH_SEED", 0))
    EPISODES = int(os.environ.get("RANKLASH_EPISODES", 100000))
    GRID_POINTS = int(os.environ.get("RANKLASH_GRID_POINTS", 401))
    HORIZON_EPSILON = float(os.environ.get("RANKLASH_HORIZON_EPSILON", 1e-9))
    LOG_LEVEL = os.environ.get("LOG_LEVEL", "INFO")
    THREADS = int(os.environ.get("RANKLASH_THREADS", 0))
