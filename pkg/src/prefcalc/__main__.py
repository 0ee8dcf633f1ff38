from prefcalc.cli.main import main

main()
