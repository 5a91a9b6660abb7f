from ontomatch.entry import main

main()
