#include "quiver/extreal.hpp"

// Header-only; this translation unit anchors the type for the library.
namespace quiver {}
