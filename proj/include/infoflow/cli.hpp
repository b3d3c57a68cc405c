#ifndef INFOFLOW_CLI_HPP_
#define INFOFLOW_CLI_HPP_

#include <ostream>
#include <string>
#include <vector>

namespace infoflow {

// Exit status: 0 property holds / command succeeded, 1 property fails,
// 2 usage or parse error.
int cli_main(int argc, char** argv);
int cli_main(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace infoflow

#endif  // INFOFLOW_CLI_HPP_
