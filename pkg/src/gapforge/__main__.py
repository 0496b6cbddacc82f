from gapforge.cli import entry

entry()
