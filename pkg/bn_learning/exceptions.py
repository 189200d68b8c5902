class BnslError(Exception):
    """Root of every error raised for bad data, models or configurations.

    The command line maps any subclass to exit code 2.
    """
