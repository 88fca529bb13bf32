#include "algebroid_mech/parallel.hpp"

#include <cstdlib>
#include <string>

namespace algebroid_mech
{

unsigned sweepThreads()
{
  unsigned hw = std::thread::hardware_concurrency();
  if (hw == 0)
  {
    hw = 1;
  }
  const char* env = std::getenv("ALGEBROID_MECH_THREADS");
  if (env == nullptr || *env == '\0')
  {
    return hw;
  }
  try
  {
    const long cap = std::stol(env);
    if (cap <= 0)
    {
      return hw;
    }
    return static_cast<unsigned>(std::min<long>(cap, 1024));
  }
  catch (const std::exception&)
  {
    return hw;
  }
}

}  // namespace algebroid_mech
