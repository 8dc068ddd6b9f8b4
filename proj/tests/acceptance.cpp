#include "guesslab/guesslab.hpp"
int main() { return 0; }
