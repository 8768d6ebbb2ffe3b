import { afterEach, beforeEach, describe, expect, it, vi } from 'vitest';

import { POPUP_LIFETIME_MS, showReminder } from '../src/reminders.js';
import type { DismissalRecord } from '../src/types.js';

describe('reminder notifications', () => {
  beforeEach(() => vi.useFakeTimers());
  afterEach(() => vi.useRealTimers());

  it('popup auto-dismisses at 8s with method=timeout', () => {
    const container = document.createElement('div');
    const dismissals: DismissalRecord[] = [];
    showReminder(container, 'Check the color contrast.', 'popup', {
      onDismiss: (r) => dismissals.push(r),
    });
    expect(container.querySelector('.reminder-popup')).not.toBeNull();

    // Still visible just inside the tolerance window.
    vi.advanceTimersByTime(POPUP_LIFETIME_MS - 500);
    expect(container.querySelector('.reminder-popup')).not.toBeNull();
    expect(dismissals).toHaveLength(0);

    // Gone by 8s + 0.5s.
    vi.advanceTimersByTime(1000);
    expect(container.querySelector('.reminder-popup')).toBeNull();
    expect(dismissals).toEqual([
      expect.objectContaining({ method: 'timeout', text: 'Check the color contrast.' }),
    ]);
  });

  it('popup dismisses early on click with method=click', () => {
    const container = document.createElement('div');
    const dismissals: DismissalRecord[] = [];
    const node = showReminder(container, 'Add a label.', 'popup', {
      onDismiss: (r) => dismissals.push(r),
    });
    node.click();
    expect(container.children).toHaveLength(0);
    vi.advanceTimersByTime(POPUP_LIFETIME_MS + 1000);
    expect(dismissals).toEqual([expect.objectContaining({ method: 'click' })]);
  });

  it('modal disables the send control until dismissed', () => {
    const container = document.createElement('div');
    const send = document.createElement('button');
    const dismissals: DismissalRecord[] = [];
    showReminder(container, 'Verify the alt text describes the image.', 'modal', {
      onDismiss: (r) => dismissals.push(r),
      sendControl: send,
    });
    expect(send.disabled).toBe(true);

    // Modals never time out.
    vi.advanceTimersByTime(60_000);
    expect(container.querySelector('.reminder-modal')).not.toBeNull();
    expect(send.disabled).toBe(true);

    (container.querySelector('.reminder-dismiss') as HTMLButtonElement).click();
    expect(container.querySelector('.reminder-modal')).toBeNull();
    expect(send.disabled).toBe(false);
    expect(dismissals).toEqual([expect.objectContaining({ method: 'click' })]);
  });

  it('allows at most one modal at a time', () => {
    const container = document.createElement('div');
    showReminder(container, 'first', 'modal', { onDismiss: () => {} });
    expect(() =>
      showReminder(container, 'second', 'modal', { onDismiss: () => {} }),
    ).toThrow(/already visible/);
  });

  it('rejects empty reminder text', () => {
    const container = document.createElement('div');
    expect(() => showReminder(container, '', 'popup', { onDismiss: () => {} })).toThrow();
  });
});
