import logging
import sys
import os
from Sumprod.Utils.singleton_management import SingletonManager

LOGGER_NAME = "Sumprod"


class Logger:
    """
    A two-stage logger that initially stores logs in memory and later writes them to files.

    Features:
    - Stage 1: Logs are buffered in memory (up to a specified capacity). Once the buffer is full
               the oldest records are dropped, so short CLI runs without an output directory never fail.
    - Stage 2: Once an output directory is provided, buffered logs are written to
               'debug.log' (everything) and 'summary.log' (INFO and above),
               and subsequent logs are directly written to those files.
    """

    def __init__(self, buffer_size: int = 500, echo_to_console: bool = True):
        """
        Initializes the Logger.

        Args:
            buffer_size (int): The maximum number of log entries that can be stored in memory.
            echo_to_console (bool): Print INFO and above to stderr while running.
        """
        self.buffer = []
        self.buffer_size = buffer_size
        self.dropped_records = 0
        self.echo_to_console = echo_to_console
        self.logger = logging.getLogger(LOGGER_NAME)
        self.logger.setLevel(logging.DEBUG)
        self.logger.propagate = False
        self.file_handler = None
        self.summary_handler = None

        # memory-only handler for Stage 1
        stream_handler = logging.StreamHandler()
        stream_handler.setFormatter(logging.Formatter('%(asctime)s - %(levelname)s - %(message)s'))
        stream_handler.emit = self._emit_to_memory
        self.logger.handlers = [stream_handler]

    def _print_to_console(self, record: logging.LogRecord):
        """
        Prints log messages selectively to the console based on log levels.
        The CLI keeps stdout for results, so the echo goes to stderr.
        """
        if self.echo_to_console and record.levelno >= logging.INFO:
            print(f"{record.levelname} - {record.getMessage()}", file=sys.stderr)

    def _emit_to_memory(self, record: logging.LogRecord):
        """
        Custom emit function to store log records in memory.
        Logs will also be printed selectively to the screen.
        """
        if len(self.buffer) >= self.buffer_size:
            self.buffer.pop(0)
            self.dropped_records += 1
        self.buffer.append(record)
        self._print_to_console(record)

    def _emit_to_log_and_screen(self, record: logging.LogRecord):
        if self.file_handler:
            logging.FileHandler.emit(self.file_handler, record)
        self._print_to_console(record)

    def setup_output_dir(self, output_dir: str):
        """
        Configures the logger to write logs into the given output directory.

        - Flushes all buffered logs to the files.
        - Replaces the memory handler with the file handlers.

        Args:
            output_dir (str): Path to the output directory.
        """
        if self.file_handler:
            return

        os.makedirs(output_dir, exist_ok=True)

        # Detailed log file at DEBUG level
        self.file_handler = logging.FileHandler(os.path.join(output_dir, 'debug.log'), mode='w', encoding='utf-8')
        self.file_handler.setLevel(logging.DEBUG)
        self.file_handler.setFormatter(logging.Formatter('%(asctime)s - %(levelname)s - %(message)s'))
        self.file_handler.emit = self._emit_to_log_and_screen

        # Summarized log file at INFO level
        self.summary_handler = logging.FileHandler(os.path.join(output_dir, 'summary.log'), mode='w', encoding='utf-8')
        self.summary_handler.setLevel(logging.INFO)
        self.summary_handler.setFormatter(logging.Formatter('%(asctime)s - %(message)s'))

        self.logger.handlers = [self.file_handler, self.summary_handler]

        if self.dropped_records:
            self.logger.debug(f"{self.dropped_records} early log records were dropped before the output directory was set")

        # Flush buffered memory logs to both handlers, without echoing them a second time
        echo = self.echo_to_console
        self.echo_to_console = False
        for record in self.buffer:
            self.file_handler.emit(record)
            if record.levelno >= logging.INFO:
                self.summary_handler.emit(record)
        self.echo_to_console = echo
        self.buffer = []

    def get_logger(self) -> logging.Logger:
        return self.logger

    @staticmethod
    def clean_logger():
        """
        remove all handlers associated with the logger.
        """
        logger = logging.getLogger(LOGGER_NAME)
        for handler in logger.handlers[:]:
            handler.close()
            logger.removeHandler(handler)


def get_logger(get_manager: bool = False):
    """
    Factory function to retrieve the logger instance.

    Args:
        get_manager (bool): If True, returns the Logger manager instance.

    Returns:
        logging.Logger or Logger: The logger instance or the Logger manager instance.
    """
    log_manager_instance = SingletonManager.get_or_create("log_manager_instance", Logger)
    if get_manager:
        return log_manager_instance
    return log_manager_instance.get_logger()
