#include <grsat/cli.hpp>

int main(int argc, char** argv) {
    std::vector<std::string> args(argv + 1, argv + argc);
    return grsat::cli_main(std::move(args));
}
