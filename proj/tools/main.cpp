#include "algebroid_mech/cli.hpp"

int main(int argc, char** argv)
{
  return algebroid_mech::run(argc, argv);
}
