# peano_trees/__main__.py
from peano_trees.cli import main

main()
