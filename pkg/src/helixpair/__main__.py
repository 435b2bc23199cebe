from helixpair.cli import main

main()
