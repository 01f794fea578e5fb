#ifndef HOLOFORM_VENDOR_JSON_FWD_HPP
#define HOLOFORM_VENDOR_JSON_FWD_HPP

// nlohmann/json ships its own forward-declaration header alongside json.hpp
// in some distributions, but the vendored single header does not, so pull in
// the full header here.
#include <json.hpp>

#endif
