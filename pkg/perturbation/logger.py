import logging

FORMAT = '%(asctime)s - %(name)s - %(levelname)s - %(message)s'


class Logger:
    """Named stream logger that also keeps the warnings it emitted.

    Engine reports copy the captured warnings so that what was logged and
    what ends up in report.json never disagree.
    """

    def __init__(self, name, level=logging.INFO):
        self.logger = logging.getLogger(name)
        self.logger.setLevel(level)
        if not self.logger.handlers:
            handler = logging.StreamHandler()
            handler.setFormatter(logging.Formatter(FORMAT))
            self.logger.addHandler(handler)
        self.captured = []

    def debug(self, message):
        self.logger.debug(message)

    def info(self, message):
        self.logger.info(message)

    def warning(self, message):
        self.captured.append(message)
        self.logger.warning(message)

    def error(self, message):
        self.logger.error(message)

    def critical(self, message):
        self.logger.critical(message)

    def drain(self):
        """Warnings emitted since the last drain, oldest first."""
        taken, self.captured = self.captured, []
        return taken


def get_logger(name, level=logging.INFO):
    if isinstance(level, str):
        level = getattr(logging, level.upper())
    return Logger(name, level)
