#ifndef NILREP_CLI_APP_HPP
#define NILREP_CLI_APP_HPP

namespace nilrep {
int cli_main(int argc, char** argv);
}

#endif
