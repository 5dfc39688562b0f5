#include <exception>
#include <iostream>

#include "cli_config.hpp"

int main(int argc, char** argv) {
    using namespace swg::cli;
    try {
        const RunConfig cfg = parse_args({argv + 1, argv + argc});
        return run(cfg);
    } catch (const ExitRequest& e) {
        return e.code;
    } catch (const UsageError& e) {
        std::cerr << "usage error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
}
