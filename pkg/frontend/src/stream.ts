import type { TurnEvent, UiSessionState } from './types.js';

// Parses a raw text/event-stream body into turn events. Malformed data
// lines are skipped with a console diagnostic rather than aborting the
// whole turn.
export function parseEventStream(raw: string): TurnEvent[] {
  const events: TurnEvent[] = [];
  for (const block of raw.split('\n\n')) {
    const dataLines = block
      .split('\n')
      .filter((line) => line.startsWith('data: '))
      .map((line) => line.slice('data: '.length));
    if (dataLines.length === 0) continue;
    try {
      const parsed = JSON.parse(dataLines.join('\n')) as TurnEvent;
      if (typeof parsed.seq !== 'number' || typeof parsed.kind !== 'string') {
        throw new Error('missing seq or kind');
      }
      events.push(parsed);
    } catch (err) {
      console.error('skipping malformed stream event:', err);
    }
  }
  return events;
}

// Folds one event into session state. Messages stay ordered by seq and
// any gap in the sequence is surfaced in state.seqGaps.
export function applyEvent(state: UiSessionState, event: TurnEvent): UiSessionState {
  const next = { ...state, messages: [...state.messages] };
  if (event.seq !== state.lastSeq + 1) {
    next.seqGaps = [...state.seqGaps, event.seq];
  }
  next.lastSeq = Math.max(state.lastSeq, event.seq);

  switch (event.kind) {
    case 'responder_message':
    case 'correction_message':
      next.messages.push({
        role: event.kind === 'responder_message' ? 'responder' : 'correction',
        markdown: String(event.payload['markdown'] ?? ''),
        seq: event.seq,
      });
      next.messages.sort((a, b) => a.seq - b.seq);
      break;
    case 'reminder_notification': {
      const text = String(event.payload['text'] ?? '');
      if (text) next.pendingReminders = [...state.pendingReminders, text];
      break;
    }
    case 'turn_error':
    case 'turn_done':
      next.turnActive = false;
      break;
  }
  return next;
}

export function renderTurnStream(state: UiSessionState, raw: string): UiSessionState {
  let next = { ...state, turnActive: true };
  for (const event of parseEventStream(raw)) {
    next = applyEvent(next, event);
  }
  return next;
}

export interface StreamHandlers {
  onState: (state: UiSessionState) => void;
  onDisconnect?: () => void;
}

// Sends one user message and consumes the SSE response incrementally.
// A dropped stream marks the state disconnected (reconnect banner) but
// preserves everything rendered so far.
export async function sendMessage(
  baseUrl: string,
  state: UiSessionState,
  text: string,
  handlers: StreamHandlers,
): Promise<UiSessionState> {
  let current = { ...state, turnActive: true, disconnected: false };
  handlers.onState(current);
  try {
    const resp = await fetch(`${baseUrl}/sessions/${state.sessionId}/messages`, {
      method: 'POST',
      headers: { 'content-type': 'application/json' },
      body: JSON.stringify({ text }),
    });
    if (!resp.ok || resp.body === null) {
      throw new Error(`message request failed: ${resp.status}`);
    }
    const reader = resp.body.getReader();
    const decoder = new TextDecoder();
    let buffer = '';
    for (;;) {
      const { done, value } = await reader.read();
      if (done) break;
      buffer += decoder.decode(value, { stream: true });
      let split;
      while ((split = buffer.indexOf('\n\n')) >= 0) {
        const block = buffer.slice(0, split);
        buffer = buffer.slice(split + 2);
        for (const event of parseEventStream(block + '\n\n')) {
          current = applyEvent(current, event);
          handlers.onState(current);
        }
      }
    }
  } catch (err) {
    console.error('event stream dropped:', err);
    current = { ...current, turnActive: false, disconnected: true };
    handlers.onState(current);
    handlers.onDisconnect?.();
  }
  return current;
}
