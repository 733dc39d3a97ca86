from Sumprod.Utils.logger_management import get_logger
from Sumprod.Utils.singleton_management import SingletonManager
from Sumprod.Utils.statistics_managment import get_statistics_manager


def final_section():
    logger = get_logger()
    logger.info("======== final_section")
    counters = get_statistics_manager().all()
    if counters:
        logger.info("---- statistics: " + ", ".join(f"{key}={value}" for key, value in counters.items()))
    logger.info("Finalizing...")


def reset_tool():
    """
    Reset tool states (logger handlers, configuration, knobs, statistics), so main() can run
    again in the same process.
    """
    logger = get_logger()
    logger.debug(f"------ reset_tool")
    logger_manager = get_logger(get_manager=True)
    logger_manager.clean_logger()
    SingletonManager.reset()
