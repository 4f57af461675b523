#include <iostream>
#include <string>
#include <vector>

#include "fisher/config.hpp"
#include "fisher/runner.hpp"

int main(int argc, char** argv) {
    std::vector<std::string> args(argv + 1, argv + argc);
    fisher::RunConfig cfg;
    try {
        cfg = fisher::parse_config(args);
    } catch (const fisher::HelpRequested& h) {
        std::cout << h.text;
        return 0;
    } catch (const fisher::ConfigError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
    return fisher::run_preset(cfg);
}
