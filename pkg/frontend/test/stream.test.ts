import { readFileSync } from 'node:fs';
import { join } from 'node:path';
import { describe, expect, it, vi } from 'vitest';

import { applyEvent, parseEventStream, renderTurnStream } from '../src/stream.js';
import { initialState } from '../src/types.js';
import { renderMessageList } from '../src/messages.js';

const FIXTURES = join(__dirname, 'fixtures');
const RECORDED = readFileSync(join(FIXTURES, 'turn_stream.sse'), 'utf8');

describe('recorded turn stream replay', () => {
  it('parses every event with gapless seq', () => {
    const events = parseEventStream(RECORDED);
    expect(events.map((e) => e.kind)).toEqual([
      'responder_message',
      'correction_message',
      'reminder_notification',
      'turn_done',
    ]);
    expect(events.map((e) => e.seq)).toEqual([1, 2, 3, 4]);
  });

  it('renders messages in seq order and closes the turn', () => {
    const state = renderTurnStream(initialState('s1'), RECORDED);
    expect(state.messages.map((m) => m.seq)).toEqual([1, 2]);
    expect(state.messages.map((m) => m.role)).toEqual(['responder', 'correction']);
    expect(state.pendingReminders).toHaveLength(1);
    expect(state.pendingReminders[0]).not.toContain('\n');
    expect(state.turnActive).toBe(false);
    expect(state.seqGaps).toEqual([]);

    const container = document.createElement('div');
    renderMessageList(container, state.messages);
    const bubbles = [...container.querySelectorAll('.chat-bubble')];
    expect(bubbles.map((b) => (b as HTMLElement).dataset.seq)).toEqual(['1', '2']);
    expect(container.querySelector('.chat-responder .code-block pre code')).not.toBeNull();
    expect(container.querySelector('.code-copy')?.textContent).toBe('Copy');
  });

  it('keeps display order by seq even when events arrive shuffled', () => {
    const events = parseEventStream(RECORDED);
    let state = initialState('s1');
    for (const event of [events[1], events[0], events[3], events[2]]) {
      state = applyEvent(state, event);
    }
    expect(state.messages.map((m) => m.seq)).toEqual([1, 2]);
  });

  it('skips malformed events with a diagnostic and surfaces seq gaps', () => {
    const spy = vi.spyOn(console, 'error').mockImplementation(() => {});
    const raw =
      'data: {"session_id":"s","seq":1,"kind":"responder_message","payload":{"markdown":"hi"}}\n\n' +
      'data: not json\n\n' +
      'data: {"session_id":"s","seq":3,"kind":"turn_done","payload":{}}\n\n';
    const state = renderTurnStream(initialState('s'), raw);
    expect(state.messages).toHaveLength(1);
    expect(state.seqGaps).toEqual([3]);
    expect(spy).toHaveBeenCalled();
    spy.mockRestore();
  });

  it('stream with only a responder event yields one bubble', () => {
    const raw =
      'data: {"session_id":"s","seq":1,"kind":"responder_message","payload":{"markdown":"hello"}}\n\n' +
      'data: {"session_id":"s","seq":2,"kind":"turn_done","payload":{}}\n\n';
    const state = renderTurnStream(initialState('s'), raw);
    expect(state.messages).toHaveLength(1);
    expect(state.pendingReminders).toHaveLength(0);
  });
});
