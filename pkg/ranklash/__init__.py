from flask import Flask

from config import Config

__version__ = "0.1.0"


def create_app(config_class=Config):
    app = Flask(__name__)
    app.config.from_object(config_class)

    # Register blueprints
    from ranklash.curves import bp as curves_bp
    from ranklash.main import bp as main_bp
    from ranklash.multi import bp as multi_bp
    from ranklash.region import bp as region_bp
    from ranklash.simulate import bp as simulate_bp
    from ranklash.threshold import bp as threshold_bp

    app.register_blueprint(main_bp)
    app.register_blueprint(threshold_bp)
    app.register_blueprint(curves_bp)
    app.register_blueprint(region_bp)
    app.register_blueprint(multi_bp)
    app.register_blueprint(simulate_bp)

    # Log to stderr
    app.logger.setLevel(app.config["LOG_LEVEL"])
    app.logger.debug("Startup")

    return app
