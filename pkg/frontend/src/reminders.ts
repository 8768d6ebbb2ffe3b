import type { DismissalRecord, NotificationStyle } from './types.js';

export const POPUP_LIFETIME_MS = 8000;

export interface ReminderHooks {
  onDismiss: (record: DismissalRecord) => void;
  // The control the modal style must make inert while visible.
  sendControl?: HTMLButtonElement | HTMLInputElement;
}

// Shows one reminder. Popup style auto-dismisses after 8s or on click;
// modal style disables the send control until its dismiss button is
// clicked. Empty text is guarded upstream and never reaches here.
export function showReminder(
  container: HTMLElement,
  text: string,
  style: NotificationStyle,
  hooks: ReminderHooks,
): HTMLElement {
  if (!text) throw new Error('empty reminder text');
  if (style === 'modal' && container.querySelector('.reminder-modal') !== null) {
    throw new Error('a modal reminder is already visible');
  }

  const node = document.createElement('div');
  node.className = style === 'modal' ? 'reminder-modal' : 'reminder-popup';
  node.setAttribute('role', style === 'modal' ? 'alertdialog' : 'status');

  const body = document.createElement('p');
  body.textContent = text;
  node.appendChild(body);

  let dismissed = false;
  const finish = (method: DismissalRecord['method']) => {
    if (dismissed) return;
    dismissed = true;
    node.remove();
    if (style === 'modal' && hooks.sendControl) hooks.sendControl.disabled = false;
    hooks.onDismiss({ text, method, dismissedAt: Date.now() });
  };

  if (style === 'popup') {
    const timer = setTimeout(() => finish('timeout'), POPUP_LIFETIME_MS);
    node.addEventListener('click', () => {
      clearTimeout(timer);
      finish('click');
    });
  } else {
    if (hooks.sendControl) hooks.sendControl.disabled = true;
    const dismiss = document.createElement('button');
    dismiss.textContent = 'Dismiss';
    dismiss.className = 'reminder-dismiss';
    dismiss.addEventListener('click', () => finish('click'));
    node.appendChild(dismiss);
  }

  container.appendChild(node);
  return node;
}
