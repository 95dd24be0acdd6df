#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace uisim::cli {

enum ExitCode { kOk = 0, kUsage = 2, kValidation = 3, kInternal = 4 };

struct RunArgs {
  std::string scenario;
  std::uint64_t seed = 0;
  std::string out;
  std::string params;
  bool parallel = false;
};

struct BatchArgs {
  std::vector<int> arms{3, 4, 5};
  std::vector<int> vehicles{2, 4, 6, 8, 10};
  int runs = 100;
  std::uint64_t seed = 0;
  std::string out;
  std::string params;
  bool parallel = false;
};

struct RenderArgs {
  std::string trace;
  std::string scenario;
  std::string out;
  std::string params;
  int every = 1;
};

int cmd_run(const RunArgs& args);
int cmd_batch(const BatchArgs& args);
int cmd_render(const RenderArgs& args);

}  // namespace uisim::cli
