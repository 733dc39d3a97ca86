#!/usr/bin/env python3

"""
Sumprod Project Entry Point
Run this script from anywhere; paths on the command line are resolved from the caller's directory.
"""

PATH_OPTIONS = ('--output', '--set', '--b', '--c', '--x', '--config', '--out', '--csv', '--set-out')

if __name__ == "__main__":
    import os
    import sys
    from pathlib import Path

    original_cwd = os.getcwd()

    # Resolve relative paths in arguments before changing directories
    for i, arg in enumerate(sys.argv):
        if arg in PATH_OPTIONS and i + 1 < len(sys.argv):
            value = sys.argv[i + 1]
            # --x is a column name for fit/report and a set file for bigratio
            if arg == '--x' and 'bigratio' not in sys.argv:
                continue
            if not os.path.isabs(value):
                sys.argv[i + 1] = os.path.abspath(os.path.join(original_cwd, value))

    # Change to the directory where this script is located (project root)
    script_dir = Path(__file__).resolve().parent
    os.chdir(script_dir)

    # Add project root to Python path for proper imports
    if str(script_dir) not in sys.path:
        sys.path.insert(0, str(script_dir))

    from Sumprod.Sumprod.main import main
    sys.exit(main())
