#pragma once

namespace copord {
class JointModel;
}
