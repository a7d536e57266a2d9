#include <iostream>

int main() {
    std::cout << "oneform: cli under construction\n";
    return 1;
}
