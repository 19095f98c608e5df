'''
Helper functions for the rest of the package.
This module has all functions that require the PyPI package colorama
'''

# pip imports
from colorama import Back
from colorama import Fore
from colorama import Style


class ColorText:
  '''
  Namespace for colorama wrapper functions
  '''
  enabled: bool = True
  '''Global switch, plain text is returned while disabled'''
  # ----------------------------------------------------------------------------

  @staticmethod
  def init(enabled: bool = True) -> None:
    '''
    Initialize colorama

    (has to be called before other colorama functions to enable color on
    legacy Windows terminals)
    '''
    # pip imports
    from colorama import just_fix_windows_console
    ColorText.enabled = enabled
    if enabled:
      just_fix_windows_console()
  # ----------------------------------------------------------------------------

  @staticmethod
  def _wrap(prefix: str, message: str) -> str:
    if not ColorText.enabled:
      return message
    return f"{prefix}{message}{Style.RESET_ALL}"
  # ----------------------------------------------------------------------------

  @staticmethod
  def error(message: str) -> str:
    '''
    Format a error message with colors
    '''
    return ColorText._wrap(f"{Fore.RED}{Back.BLACK}", message)
  # ----------------------------------------------------------------------------

  @staticmethod
  def warning(message: str) -> str:
    '''
    Format a warning message with colors
    '''
    return ColorText._wrap(f"{Fore.YELLOW}{Back.BLACK}", message)
  # ----------------------------------------------------------------------------

  @staticmethod
  def good(message: str) -> str:
    '''
    Format a positive message with colors
    '''
    return ColorText._wrap(f"{Fore.GREEN}{Back.BLACK}", message)
  # ----------------------------------------------------------------------------

