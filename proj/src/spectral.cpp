#include "hankelci/common.hpp"
