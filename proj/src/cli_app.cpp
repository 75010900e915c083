#include "nilrep/cli_app.hpp"

namespace nilrep {
int cli_main(int, char**) { return 0; }
}
