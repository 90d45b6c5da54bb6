#include "koszul/check.hpp"

namespace koszul {

std::string status_name(Status s) {
    switch (s) {
        case Status::Pass: return "pass";
        case Status::Fail: return "fail";
        case Status::NotApplicable: return "n/a";
        case Status::Error: return "error";
    }
    return "error";
}

}  // namespace koszul
