#include "rsq/ratfun.hpp"
