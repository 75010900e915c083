#include "nilrep/cli_app.hpp"

int main(int argc, char** argv) { return nilrep::cli_main(argc, argv); }
