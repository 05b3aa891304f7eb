#include <deque>

#include "ranksync/error.hpp"
#include "ranksync/protocols.hpp"

namespace ranksync {

Transcript run_session(Party& transmitter, Party& receiver) {
  Transcript transcript;
  std::deque<Message> channel;
  std::vector<Message> out;

  auto flush = [&]() {
    for (Message& m : out) {
      transcript.send(m);
      channel.push_back(std::move(m));
    }
    out.clear();
  };

  transmitter.start(out);
  flush();
  receiver.start(out);
  flush();

  // Generous cap: no protocol here comes near this many messages.
  constexpr size_t kMessageCap = 1u << 20;
  size_t delivered = 0;
  while (!channel.empty()) {
    if (++delivered > kMessageCap)
      throw ContractViolation("session exceeded the message cap; endpoints are looping");
    Message m = std::move(channel.front());
    channel.pop_front();
    if (m.direction == Direction::TtoR)
      receiver.on_message(m, out);
    else
      transmitter.on_message(m, out);
    flush();
  }

  // The receiver must have restored its sequence.  The transmitter may still
  // be idle-waiting (it has no way to observe a receiver-local resolution),
  // which is fine: it sent everything the receiver needed.
  if (!receiver.done())
    throw ContractViolation("session stalled with the receiver unresolved");
  return transcript;
}

}  // namespace ranksync
