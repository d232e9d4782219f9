from dfmat.cli import main

main()
