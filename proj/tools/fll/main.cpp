#include "app.hpp"

int main(int argc, char** argv) { return fll::cli::run(argc, argv); }
