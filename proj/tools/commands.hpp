#pragma once

#include <filesystem>
#include <string>

#include "config.hpp"

namespace ifscli {

enum ExitCode { kOk = 0, kConfig = 2, kIncomplete = 3, kInternal = 4 };

struct Context {
    RunConfig cfg;
    std::filesystem::path out_dir = ".";
};

int cmd_target(const Context& ctx);
int cmd_attractor(const Context& ctx);
int cmd_chaos(const Context& ctx);
int cmd_stationary(const Context& ctx);
int cmd_recurrent(const Context& ctx);
int cmd_split(const Context& ctx);

/// Exit code for a library status.
int exit_code_for(int status);

}  // namespace ifscli
