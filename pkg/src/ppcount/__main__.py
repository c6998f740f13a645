from ppcount.cli import main

main()
