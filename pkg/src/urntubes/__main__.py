from urntubes.cli import main

main()
