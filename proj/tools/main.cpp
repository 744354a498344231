#include "dlg/cli.hpp"

int main(int argc, char** argv) { return dlg::cli::run(argc, argv); }
